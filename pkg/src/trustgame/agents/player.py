"""Player agent answering a rendered game prompt."""

from pydantic_ai import Agent

SYSTEM_PROMPT = """\
You are one independent player in a strategic decision game about AI adoption and regulation.
You decide alone: you cannot talk to the other players and you do not know their choices.
Think about the payoffs you are given, then end your reply with the answer line exactly as
the prompt asks for it.
"""

# Model is supplied per run by the backend.
agent = Agent(
    output_type=str,
    system_prompt=SYSTEM_PROMPT,
)
