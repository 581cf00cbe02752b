"""Aggregate game transcripts into per-cell frequencies and marginals."""

import logging
from collections.abc import Iterable, Sequence

from trustgame.exceptions import AggregationError
from trustgame.game.payoffs import enumerate_profiles
from trustgame.models.experiment import CellResult, RoleShares, RoundMarginals
from trustgame.models.game import ActionProfile, TrustMode, is_cooperative
from trustgame.models.harness import CellKey, GameTranscript

logger = logging.getLogger(__name__)


def _empty_counts(mode: TrustMode) -> dict[str, int]:
    return {profile.code(mode): 0 for profile in enumerate_profiles(mode)}


def _shares(counts: dict[str, int], total: int) -> RoleShares:
    """Exact marginalization of joint counts."""
    trust = developer = regulator = 0
    for code, count in counts.items():
        profile = ActionProfile.from_code(code)
        trust += count if is_cooperative(profile.user) else 0
        developer += count if is_cooperative(profile.developer) else 0
        regulator += count if is_cooperative(profile.regulator) else 0
    return RoleShares(
        trust=trust / total,
        developer_comply=developer / total,
        regulator_comply=regulator / total,
    )


def _default_cell(transcript: GameTranscript) -> CellKey:
    params = transcript.spec.params
    return CellKey(
        mode=transcript.spec.mode, epsilon=params.epsilon, c_R=params.c_R, b_fo=params.b_fo
    )


def aggregate_rounds(
    transcripts: Sequence[GameTranscript], cell: CellKey | None = None
) -> CellResult:
    """Per-round marginals and over-round profile frequencies of one set of games.

    Invalid games are counted but never contribute to frequencies. When no game is
    valid the result is degenerate and carries counts only.

    Raises:
        AggregationError: Empty input, mixed round counts or mixed trust modes, or a
            valid transcript whose record count differs from its rounds.
    """
    if not transcripts:
        raise AggregationError("No transcripts to aggregate")
    rounds = {t.spec.rounds for t in transcripts}
    if len(rounds) > 1:
        raise AggregationError(f"Transcripts mix round counts: {sorted(rounds)}")
    modes = {t.spec.mode for t in transcripts}
    if len(modes) > 1:
        raise AggregationError("Transcripts mix trust modes")

    first = transcripts[0]
    n_rounds = first.spec.rounds
    mode = first.spec.mode
    cell = cell or first.cell or _default_cell(first)

    valid = [t for t in transcripts if t.valid]
    round_counts = [_empty_counts(mode) for _ in range(n_rounds)]
    for transcript in valid:
        if len(transcript.records) != n_rounds:
            raise AggregationError(
                f"Valid game {transcript.game_id} has {len(transcript.records)} of "
                f"{n_rounds} rounds"
            )
        for record in transcript.records:
            round_counts[record.round_index - 1][record.profile.code(mode)] += 1

    profile_counts = _empty_counts(mode)
    for counts in round_counts:
        for code, count in counts.items():
            profile_counts[code] += count

    result = CellResult(
        cell=cell,
        params=first.spec.params,
        rounds=n_rounds,
        valid_games=len(valid),
        invalid_games=len(transcripts) - len(valid),
        profile_counts=profile_counts,
        round_counts=round_counts,
    )
    if result.degenerate:
        logger.warning("Cell %s has no valid games (%d invalid)", cell.slug, result.invalid_games)
        return result

    total = len(valid) * n_rounds
    result.profile_frequencies = {code: count / total for code, count in profile_counts.items()}
    result.per_round_marginals = [
        RoundMarginals(round_index=index, **_shares(counts, len(valid)).model_dump())
        for index, counts in enumerate(round_counts, start=1)
    ]
    result.role_average = _shares(profile_counts, total)
    return result


def aggregate_transcripts(
    transcripts: Iterable[GameTranscript], cells: Sequence[CellKey] | None = None
) -> list[CellResult]:
    """Group transcripts by cell and aggregate each group.

    Cells follow ``cells`` when given, otherwise their order of first appearance.
    """
    groups: dict[CellKey, list[GameTranscript]] = {}
    for transcript in transcripts:
        key = transcript.cell or _default_cell(transcript)
        groups.setdefault(key, []).append(transcript)

    order = list(cells) if cells is not None else list(groups)
    missing = [cell.slug for cell in order if cell not in groups]
    if missing:
        raise AggregationError(f"No transcripts for cell(s): {', '.join(missing)}")
    return [aggregate_rounds(groups[cell], cell) for cell in order]
