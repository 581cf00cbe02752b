"""LLM agents playing the trust game: prompts, reply parsing and backends."""
