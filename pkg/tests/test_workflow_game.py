"""Tests for the game workflow."""

import asyncio

import pytest

from trustgame.agents.backends import CompletionRequest, ScriptedBackend
from trustgame.exceptions import BackendError, PromptTemplateError
from trustgame.models.game import PayoffTriple, Role, TrustMode
from trustgame.models.harness import BackendConfig, BackendKind, GameSpec
from trustgame.storage.transcripts import transcript_lines
from trustgame.workflows.game import play_game
from trustgame.workflows.state import Severity

PLACEHOLDER_CONFIG = BackendConfig(kind=BackendKind.FIXED_ACTION, script=["NDD"])


class ReplyBackend:
    """Replies from a function of the request and records every prompt."""

    def __init__(self, reply):
        self.config = PLACEHOLDER_CONFIG
        self.reply = reply
        self.requests: list[CompletionRequest] = []

    async def complete(self, request: CompletionRequest) -> str:
        self.requests.append(request)
        return self.reply(request)


class DelayedBackend:
    """Wraps a backend and delays each role by a fixed amount."""

    def __init__(self, inner, delays: dict[Role, float]):
        self.config = inner.config
        self.inner = inner
        self.delays = delays

    async def complete(self, request: CompletionRequest) -> str:
        await asyncio.sleep(self.delays[request.role])
        return await self.inner.complete(request)


class TestPlayGame:
    """Test complete games."""

    @pytest.mark.asyncio
    async def test_one_shot_fixed_profile(self, one_shot_spec, fixed_registry):
        """All agents cooperating pays the TCC row."""
        transcript = await play_game(one_shot_spec, fixed_registry("TCC"))

        assert transcript.valid
        assert len(transcript.records) == 1
        record = transcript.records[0]
        assert record.profile.code(TrustMode.UNCONDITIONAL) == "TCC"
        assert record.payoffs == PayoffTriple(user=4.0, developer=3.5, regulator=3.5)
        assert [turn.retries for turn in record.turns] == [0, 0, 0]

    @pytest.mark.asyncio
    async def test_repeated_defection(self, fixed_registry):
        """Ten rounds of NDD pay nothing."""
        spec = GameSpec(mode=TrustMode.UNCONDITIONAL, rounds=10)
        transcript = await play_game(spec, fixed_registry("NDD"))

        assert [r.round_index for r in transcript.records] == list(range(1, 11))
        assert transcript.cumulative == PayoffTriple()

    @pytest.mark.asyncio
    async def test_cumulative_payoffs(self, fixed_registry):
        """Cumulative payoffs add up round by round."""
        spec = GameSpec(mode=TrustMode.UNCONDITIONAL, rounds=3)
        transcript = await play_game(spec, fixed_registry("TCC", "TDC", "NCC"))

        cumulative = [r.cumulative for r in transcript.records]
        assert cumulative[0] == PayoffTriple(user=4.0, developer=3.5, regulator=3.5)
        assert cumulative[1] == PayoffTriple(user=3.6, developer=6.0, regulator=8.5)
        assert cumulative[2] == PayoffTriple(user=3.6, developer=5.5, regulator=8.0)

    @pytest.mark.asyncio
    async def test_later_rounds_see_history(self):
        """Round 2 prompts contain round 1's outcome."""
        backend = ReplyBackend(lambda request: "ANSWER: C" if request.role != Role.USER else "T")
        spec = GameSpec(mode=TrustMode.UNCONDITIONAL, rounds=2)
        await play_game(spec, {"default": backend})

        round_two = [r for r in backend.requests if r.round_index == 2]
        assert len(round_two) == 3
        for request in round_two:
            assert "Round 1: user chose T, developer chose C, regulator chose C" in request.prompt

    @pytest.mark.asyncio
    async def test_scripted_games_are_reproducible(self, scripted_backend):
        """Same seeds produce byte-identical transcripts."""
        spec = GameSpec(rounds=5, seed=123, replicate=4)
        registry = {"default": ScriptedBackend(scripted_backend(seed=9))}

        first = await play_game(spec, registry)
        second = await play_game(spec, registry)

        assert transcript_lines(first) == transcript_lines(second)

    @pytest.mark.asyncio
    async def test_query_order_does_not_matter(self, scripted_backend):
        """Reply timing does not change the outcome."""
        spec = GameSpec(rounds=4, seed=8)
        inner = ScriptedBackend(scripted_backend(seed=2))
        fast_user = DelayedBackend(
            inner, {Role.USER: 0.0, Role.DEVELOPER: 0.01, Role.REGULATOR: 0.02}
        )
        slow_user = DelayedBackend(
            inner, {Role.USER: 0.02, Role.DEVELOPER: 0.01, Role.REGULATOR: 0.0}
        )

        first = await play_game(spec, {"default": fast_user}, game_id="g")
        second = await play_game(spec, {"default": slow_user}, game_id="g")

        assert [r.profile for r in first.records] == [r.profile for r in second.records]

    @pytest.mark.asyncio
    async def test_default_game_id(self, one_shot_spec, fixed_registry):
        """Ids derive from seed and replicate unless given."""
        spec = one_shot_spec.model_copy(update={"seed": 5, "replicate": 7})
        transcript = await play_game(spec, fixed_registry("NDD"))
        assert transcript.game_id == "game-s5-r007"

    @pytest.mark.asyncio
    async def test_progress_reported(
        self, one_shot_spec, fixed_registry, on_progress, progress_messages
    ):
        """Rounds and completion are reported."""
        await play_game(
            one_shot_spec, fixed_registry("NDD"), game_id="g1", on_progress=on_progress
        )
        assert (Severity.INFO, "Round 1/1") in progress_messages
        assert (Severity.SUCCESS, "g1 finished") in progress_messages


class TestFailures:
    """Test invalid games."""

    @pytest.mark.asyncio
    async def test_unreadable_replies_invalidate_game(self, on_progress, progress_messages):
        """Replies that never parse end the game after the retries."""
        backend = ReplyBackend(lambda request: "I need more time to think.")
        spec = GameSpec(parse_retries=2)
        transcript = await play_game(spec, {"default": backend}, on_progress=on_progress)

        assert not transcript.valid
        assert transcript.records == []
        assert "round 1" in transcript.failure_reason
        assert len(transcript.pending_turns) == 3
        for turn in transcript.pending_turns:
            assert len(turn.replies) == 3
            assert turn.action is None
            assert turn.error.startswith("ParseEmptyError")
        assert any(severity is Severity.ERROR for severity, _ in progress_messages)

    @pytest.mark.asyncio
    async def test_retry_appends_reminder(self):
        """A re-prompt carries the format reminder and can recover."""

        def reply(request: CompletionRequest) -> str:
            if request.attempt == 0:
                return "Let me think."
            return "ANSWER: N" if request.role is Role.USER else "ANSWER: D"

        backend = ReplyBackend(reply)
        transcript = await play_game(GameSpec(), {"default": backend})

        assert transcript.valid
        assert [turn.retries for turn in transcript.records[0].turns] == [1, 1, 1]
        retried = [r for r in backend.requests if r.attempt == 1]
        assert all("could not be read" in r.prompt for r in retried)
        first_tries = [r for r in backend.requests if r.attempt == 0]
        assert all("could not be read" not in r.prompt for r in first_tries)

    @pytest.mark.asyncio
    async def test_backend_failure_keeps_completed_rounds(self):
        """A backend error in round 2 keeps round 1 and stops."""

        def reply(request: CompletionRequest) -> str:
            if request.round_index == 2 and request.role is Role.REGULATOR:
                raise BackendError("gateway down")
            return "ANSWER: N" if request.role is Role.USER else "ANSWER: D"

        spec = GameSpec(rounds=3)
        transcript = await play_game(spec, {"default": ReplyBackend(reply)})

        assert not transcript.valid
        assert len(transcript.records) == 1
        assert "gateway down" in transcript.failure_reason
        failed = [t for t in transcript.pending_turns if t.action is None]
        assert [t.role for t in failed] == [Role.REGULATOR]

    @pytest.mark.asyncio
    async def test_missing_backend(self, one_shot_spec):
        """Specs naming an unknown backend id are rejected."""
        with pytest.raises(BackendError, match="default"):
            await play_game(one_shot_spec, {})

    @pytest.mark.asyncio
    async def test_bad_template_raises_before_any_call(self, one_shot_spec):
        """Template errors surface before the first backend request."""
        backend = ReplyBackend(lambda request: "ANSWER: C")
        with pytest.raises(PromptTemplateError):
            await play_game(one_shot_spec, {"default": backend}, template="{{ rival }}")
        assert backend.requests == []
