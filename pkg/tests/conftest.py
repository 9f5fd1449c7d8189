import json
from datetime import datetime, timezone

import pytest

from themescope.corpus.models import DiscussionThread
from themescope.fixtures.mock_llm import ScriptedPort


def make_thread(sid="s001", subreddit="jobs", title="a title", body="a body",
                comments=("first comment", "second comment"), created="2023-06-01T00:00:00+00:00"):
    return DiscussionThread(
        submission_id=sid,
        subreddit=subreddit,
        title=title,
        body=body,
        comments=tuple(comments),
        created_at=datetime.fromisoformat(created),
    )


def submission_line(sid, created_utc=1_685_577_600, subreddit="jobs", title="t", body="b"):
    return json.dumps(
        {"id": sid, "subreddit": subreddit, "title": title, "selftext": body,
         "created_utc": created_utc}
    )


def comment_line(sid, body, created_utc=1_685_577_700):
    return json.dumps({"link_id": f"t3_{sid}", "body": body, "created_utc": created_utc})


@pytest.fixture
def scripted_port():
    return ScriptedPort()
