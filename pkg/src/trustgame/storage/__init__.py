"""Storage utilities for persisted game transcripts."""

from trustgame.storage.transcripts import load_transcripts, transcript_lines, write_transcripts

__all__ = ["load_transcripts", "transcript_lines", "write_transcripts"]
