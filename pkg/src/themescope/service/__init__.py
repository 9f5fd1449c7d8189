from themescope.service.state import RunState, RunStore, STAGE_ORDER
from themescope.service.workflow import recommend_sources, suggest_high_level_themes
from themescope.service.app import ServiceSettings, create_app

__all__ = [
    "RunState",
    "RunStore",
    "STAGE_ORDER",
    "recommend_sources",
    "suggest_high_level_themes",
    "ServiceSettings",
    "create_app",
]
