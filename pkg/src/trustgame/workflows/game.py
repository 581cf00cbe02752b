"""Game workflow using Pydantic Graph."""

from __future__ import annotations

import asyncio
import logging
from collections.abc import Mapping
from dataclasses import dataclass

from pydantic_graph import BaseNode, End, Graph, GraphRunContext

from trustgame.agents.backends import Backend, CompletionRequest
from trustgame.agents.parser import parse_action
from trustgame.agents.prompts import (
    load_template,
    render_game_prompts,
    render_prompt,
    retry_reminder,
)
from trustgame.exceptions import BackendError, ParseError
from trustgame.game.payoffs import payoff
from trustgame.models.game import ROLES, ActionProfile, Conduct, Role, UserAction
from trustgame.models.harness import (
    AgentSpec,
    AgentTurn,
    CellKey,
    GameSpec,
    GameTranscript,
    RoundRecord,
)
from trustgame.workflows.state import GameState, ProgressCallback, Severity, _noop_progress

logger = logging.getLogger(__name__)

Ctx = GraphRunContext[GameState, None]


async def _query_agent(state: GameState, agent: AgentSpec) -> AgentTurn:
    """Ask one agent for its action, re-prompting on unreadable replies."""
    transcript = state.transcript
    spec = transcript.spec
    prompt = render_prompt(state.template, agent, spec, transcript.records)
    turn = AgentTurn(role=agent.role, prompt=prompt)

    for attempt in range(spec.parse_retries + 1):
        text = prompt if attempt == 0 else prompt + retry_reminder(agent.role, spec.mode)
        request = CompletionRequest(
            role=agent.role,
            prompt=text,
            mode=spec.mode,
            round_index=len(transcript.records) + 1,
            total_rounds=spec.rounds,
            attempt=attempt,
            game_seed=spec.seed,
            replicate=spec.replicate,
        )
        turn.retries = attempt
        try:
            reply = await state.backend.complete(request)
        except Exception as e:
            turn.error = f"{type(e).__name__}: {e}"
            return turn

        turn.replies.append(reply)
        try:
            action = parse_action(reply, agent.role)
        except ParseError as e:
            turn.error = f"{type(e).__name__}: {e}"
            logger.debug("Unreadable %s reply (attempt %d): %r", agent.role, attempt, reply)
            continue

        turn.action = action.value
        turn.error = None
        return turn

    return turn


@dataclass
class QueryAgents(BaseNode[GameState, None, GameTranscript]):
    """Query the three agents independently for the next round."""

    async def run(self, ctx: Ctx) -> SettleRound | Abort:
        spec = ctx.state.transcript.spec
        round_index = len(ctx.state.transcript.records) + 1
        ctx.state.on_progress(Severity.INFO, f"Round {round_index}/{spec.rounds}")

        # Prompts depend on shared history only, never on same-round choices
        turns = await asyncio.gather(
            *(_query_agent(ctx.state, spec.agent(role)) for role in ROLES)
        )

        failed = [turn for turn in turns if turn.action is None]
        if failed:
            reasons = "; ".join(f"{turn.role}: {turn.error}" for turn in failed)
            return Abort(reason=f"round {round_index}: {reasons}", turns=list(turns))
        return SettleRound(turns=list(turns))


@dataclass
class SettleRound(BaseNode[GameState, None, GameTranscript]):
    """Resolve the joint action, pay out and decide whether to play on."""

    turns: list[AgentTurn]

    async def run(self, ctx: Ctx) -> QueryAgents | End[GameTranscript]:
        transcript = ctx.state.transcript
        spec = transcript.spec
        actions = {turn.role: turn.action for turn in self.turns}
        profile = ActionProfile(
            user=UserAction(actions[Role.USER]),
            developer=Conduct(actions[Role.DEVELOPER]),
            regulator=Conduct(actions[Role.REGULATOR]),
        )
        payoffs = payoff(profile, spec.params, spec.mode)
        record = RoundRecord(
            round_index=len(transcript.records) + 1,
            turns=self.turns,
            profile=profile,
            payoffs=payoffs,
            cumulative=transcript.cumulative + payoffs,
        )
        transcript.records.append(record)
        logger.debug(
            "%s round %d: %s -> %s",
            transcript.game_id,
            record.round_index,
            profile.code(spec.mode),
            payoffs,
        )

        if len(transcript.records) < spec.rounds:
            return QueryAgents()
        ctx.state.on_progress(Severity.SUCCESS, f"{transcript.game_id} finished")
        return End(transcript)


@dataclass
class Abort(BaseNode[GameState, None, GameTranscript]):
    """Mark the game invalid, keeping completed rounds and the failed round's turns."""

    reason: str
    turns: list[AgentTurn]

    async def run(self, ctx: Ctx) -> End[GameTranscript]:
        transcript = ctx.state.transcript
        transcript.valid = False
        transcript.failure_reason = self.reason
        transcript.pending_turns = self.turns
        logger.warning("%s invalid: %s", transcript.game_id, self.reason)
        ctx.state.on_progress(Severity.ERROR, f"{transcript.game_id} invalid: {self.reason}")
        return End(transcript)


game_graph = Graph(
    nodes=[QueryAgents, SettleRound, Abort],
    state_type=GameState,
    run_end_type=GameTranscript,
)


async def play_game(
    spec: GameSpec,
    backends: Mapping[str, Backend],
    *,
    template: str | None = None,
    game_id: str | None = None,
    cell: CellKey | None = None,
    on_progress: ProgressCallback = _noop_progress,
) -> GameTranscript:
    """Play one game for exactly ``spec.rounds`` rounds.

    Backend and parse failures do not raise: they end the game with an invalid
    transcript that keeps every completed round.

    Args:
        spec: Game to play.
        backends: Backend registry keyed by backend id.
        template: Prompt template text. Defaults to ``spec.template`` or the built-in one.
        game_id: Transcript id. Defaults to one derived from seed and replicate.
        cell: Experiment cell the game belongs to.
        on_progress: Progress callback.

    Raises:
        BackendError: If the spec's backend id is not in the registry.
        PromptTemplateError: If the template cannot be rendered.
    """
    backend = backends.get(spec.backend_id)
    if backend is None:
        raise BackendError(f"No backend configured with id {spec.backend_id!r}")

    template_text = template if template is not None else load_template(spec.template)
    render_game_prompts(spec, template_text)

    transcript = GameTranscript(
        game_id=game_id or f"game-s{spec.seed}-r{spec.replicate:03d}",
        cell=cell,
        spec=spec,
        backend=backend.config,
    )
    state = GameState(
        transcript=transcript,
        template=template_text,
        backend=backend,
        on_progress=on_progress,
    )
    await game_graph.run(QueryAgents(), state=state)
    return state.transcript
