"""Registry completeness, config parsing, grid runs, and report emission."""

import json

import pytest

from qgenocchi import verify
from qgenocchi.genocchi import VARIANT_CORRECTED, VARIANT_PRINTED
from qgenocchi.qnum import Rat
from qgenocchi.verify import (
    ConfigError,
    GridSpec,
    Identity,
    IdentityReport,
    VARIANT_NA,
    exit_status,
    parse_config,
    registry_entries,
    render_csv,
    render_json,
    render_markdown,
    run_all,
    run_identity,
    summarize,
    variants_of,
)

# a grid small enough that any single identity finishes instantly
TINY = GridSpec(
    n_max=3,
    k_max=1,
    s_max=3,
    degree_max=2,
    alpha_max=1,
    beta_max=1,
    x_min=0,
    x_max=1,
    q_samples=(Rat(2), Rat(1, 2)),
    padic_contexts=((3, 4),),
    series_n_max=2,
    series_x=(0,),
    series_q=(Rat(1, 2),),
)

VARIANT_BEARING = {
    Identity.T4_VALUE_AT_TWO,
    Identity.C1_INTEGRAL,
    Identity.T6_MOMENT,
    Identity.T7_PRODUCT,
    Identity.T8_SFOLD,
    Identity.C2_PRODUCT_EXPANSION,
    Identity.C3_SFOLD_EXPANSION,
}


def test_registry_is_complete():
    entries = registry_entries()
    assert set(entries) == set(Identity)
    assert len(Identity) == 15
    for identity, entry in entries.items():
        if identity in VARIANT_BEARING:
            assert entry.variants == (VARIANT_PRINTED, VARIANT_CORRECTED)
        else:
            assert entry.variants == (VARIANT_NA,)
        assert entry.description


def test_every_identity_runs_on_the_tiny_grid():
    for identity in Identity:
        reports = run_identity(identity, TINY)
        assert reports
        for report in reports:
            assert report.identity == identity.value
            assert report.verdict in ("PASS", "FAIL", "SKIPPED")


def test_run_identity_accepts_string_ids_and_rejects_unknown():
    reports = run_identity("EQ18_RECURRENCE", TINY)
    assert all(r.verdict == "PASS" for r in reports)
    with pytest.raises(ValueError, match="unknown identity"):
        run_identity("EQ99", TINY)
    with pytest.raises(ValueError, match="variants"):
        run_identity(Identity.EQ18_RECURRENCE, TINY, variant=VARIANT_PRINTED)


def test_value_at_two_printed_fails_with_exact_difference():
    reports = run_identity(Identity.T4_VALUE_AT_TWO, TINY, variant=VARIANT_PRINTED)
    first = reports[0]
    assert first.verdict == "FAIL"
    assert first.point == {"n": "2", "alpha": "1", "beta": "1", "q": "2"}
    assert (first.lhs, first.rhs, first.difference) == ("5", "11/2", "-1/2")


def test_corrected_variants_pass_on_tiny_grid():
    for identity in VARIANT_BEARING:
        reports = run_identity(identity, TINY, variant=VARIANT_CORRECTED)
        assert not [r for r in reports if r.verdict == "FAIL"]


def test_skip_reasons_are_recorded():
    c1 = run_identity(Identity.C1_INTEGRAL, TINY, variant=VARIANT_CORRECTED)
    skips = [r for r in c1 if r.verdict == "SKIPPED"]
    assert skips and all("n=0" in r.reason for r in skips)
    t7 = run_identity(Identity.T7_PRODUCT, TINY, variant=VARIANT_CORRECTED)
    inadmissible = [r for r in t7 if r.verdict == "SKIPPED"]
    assert inadmissible
    assert all("must exceed s*k" in r.reason for r in inadmissible)


def test_invalid_q_sample_becomes_single_skip():
    grid = GridSpec(
        n_max=2,
        alpha_max=1,
        beta_max=1,
        x_min=0,
        x_max=0,
        q_samples=(Rat(2), Rat(1)),
    )
    reports = run_identity(Identity.EQ18_RECURRENCE, grid)
    skips = [r for r in reports if r.verdict == "SKIPPED"]
    assert len(skips) == 1
    assert skips[0].point == {"q": "1"}
    assert "not a valid sample point" in skips[0].reason


def test_run_all_order_and_variant_restriction():
    reports = run_all(TINY)
    seen = []
    for report in reports:
        if report.identity not in seen:
            seen.append(report.identity)
    assert seen == [identity.value for identity in Identity]
    printed_only = run_all(TINY, variant=VARIANT_PRINTED)
    variants = {(r.identity, r.variant) for r in printed_only}
    assert (Identity.T4_VALUE_AT_TWO.value, VARIANT_CORRECTED) not in variants
    assert (Identity.EQ18_RECURRENCE.value, VARIANT_NA) in variants


def test_parse_config_round_trip_and_errors():
    grid = parse_config(
        """
        # comment
        n_max = 4
        q_samples = 2, 1/2, -2
        padic_contexts = 3:4, 5:6
        series_q = 1/2
        series_x = 0, 1
        series_tol = 1e-6
        """
    )
    assert grid.n_max == 4
    assert grid.q_samples == (Rat(2), Rat(1, 2), Rat(-2))
    assert grid.padic_contexts == ((3, 4), (5, 6))
    assert grid.series_tol == 1e-6
    with pytest.raises(ConfigError, match="line 1: unknown key"):
        parse_config("mystery = 3")
    with pytest.raises(ConfigError, match="line 2: bad value"):
        parse_config("n_max = 3\nk_max = x")
    with pytest.raises(ConfigError, match="line 1: expected key = value"):
        parse_config("just words")
    with pytest.raises(ConfigError, match="inconsistent"):
        parse_config("x_min = 5\nx_max = 1")


def _sample_reports():
    return [
        IdentityReport("A", VARIANT_NA, {"n": "1"}, "PASS", "3", "3"),
        IdentityReport("B", VARIANT_PRINTED, {"n": "2"}, "FAIL", "5", "11/2", "-1/2"),
        IdentityReport("B", VARIANT_CORRECTED, {"n": "2"}, "PASS", "5", "5"),
        IdentityReport("C", VARIANT_NA, {"q": "1"}, "SKIPPED", reason="bad q"),
    ]


def test_exit_status_policy():
    reports = _sample_reports()
    assert exit_status(reports) == 0  # printed failures are findings
    assert exit_status(reports, strict_printed=True) == 1
    corrected_fail = [
        IdentityReport("B", VARIANT_CORRECTED, {}, "FAIL", "1", "2", "-1")
    ]
    assert exit_status(corrected_fail) == 1
    assert exit_status([]) == 2
    only_skips = [IdentityReport("C", VARIANT_NA, {}, "SKIPPED", reason="r")]
    assert exit_status(only_skips) == 2


def test_summarize_counts_and_first_failure():
    buckets = summarize(_sample_reports())
    assert [b["identity"] for b in buckets] == ["A", "B", "B", "C"]
    failing = buckets[1]
    assert failing["variant"] == VARIANT_PRINTED
    assert (failing["pass"], failing["fail"], failing["skipped"]) == (0, 1, 0)
    assert failing["first_failure"].difference == "-1/2"
    assert buckets[3]["skipped"] == 1


def test_render_json_schema():
    payload = json.loads(render_json(_sample_reports()))
    assert set(payload) == {"summary", "reports"}
    passing, failing, _, skipped = payload["reports"]
    assert set(passing) == {"identity", "variant", "point", "lhs", "rhs", "verdict"}
    assert set(failing) == set(passing) | {"difference"}
    assert set(skipped) == {"identity", "variant", "point", "verdict", "reason"}
    assert payload["summary"][1]["first_failure"]["difference"] == "-1/2"


def test_render_csv_header_and_skip_cell():
    text = render_csv(_sample_reports())
    lines = text.splitlines()
    assert lines[0] == "identity,variant,point,lhs,rhs,verdict,difference"
    assert lines[1] == "A,n/a,n=1,3,3,PASS,"
    assert "SKIPPED(bad q)" in lines[4]


def test_render_markdown_sections():
    text = render_markdown(_sample_reports())
    assert "| identity | variant | pass | fail | skipped |" in text
    assert "## First counterexamples" in text
    assert "difference = -1/2" in text


def test_renderers_are_deterministic():
    reports = run_identity(Identity.T4_VALUE_AT_TWO, TINY)
    for renderer in (render_json, render_csv, render_markdown):
        assert renderer(reports) == renderer(reports)


def test_variants_of():
    assert variants_of(Identity.T6_MOMENT) == (VARIANT_PRINTED, VARIANT_CORRECTED)
    assert variants_of(Identity.T1_UMBRAL) == (VARIANT_NA,)
