from themescope.corpus.models import DiscussionThread, InterviewTranscript, QAPair, Turn
from themescope.corpus.ingest import IngestStats, ingest_forum_dump, open_record_stream
from themescope.corpus.segment import segment_interview
from themescope.corpus.store import (
    export_threads_csv,
    import_threads_csv,
    read_thread_store,
    read_transcript_store,
    write_thread_store,
)

__all__ = [
    "DiscussionThread",
    "InterviewTranscript",
    "QAPair",
    "Turn",
    "IngestStats",
    "ingest_forum_dump",
    "open_record_stream",
    "segment_interview",
    "export_threads_csv",
    "import_threads_csv",
    "read_thread_store",
    "read_transcript_store",
    "write_thread_store",
]
