"""Assemble the analysis report: contingency counts, duration means,
singleton/geminate comparison, and the ANOVA battery.

Output is deterministic: identical token-CSV bytes produce identical
report bytes, so reports can be diffed across runs and parallelism
settings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .acoustics import DOUBLE_BURST, SINGLE_BURST
from .errors import StopgemError, TooFewGroupsError, ZeroWithinVarianceError
from .gemination import TokenRow
from .stats import AnovaResult, GroupedSample, descriptive, one_way_anova

GEMINATE_TYPES = ("lexical", "syntactic")
DURATION_ORDER = ["Vd_ms", "Cd_ms", "C1d_ms", "C2d_ms",
                  "Cld_ms", "Cl1d_ms", "Cl2d_ms", "Bd_ms", "B1d_ms", "B2d_ms"]

NOTES = [
    "ANOVA degrees of freedom are reported as (k-1, N-k); the published "
    "appendix tables print N-1 in the second position for some tests "
    "(their eta-squared columns are consistent with N-k for others). "
    "Enable the paper-df option to print the N-1 figure alongside.",
    "The singleton/geminate table reports the consonant/vowel ratio both "
    "as the mean of per-token ratios and as the ratio of mean durations; "
    "the published table is consistent with the former, not the latter.",
]


def _sort_key(row: TokenRow):
    sid = row.sentence_id
    sid_key = (0, int(sid)) if sid.isdigit() else (1, sid)
    return (row.speaker, sid_key, row.repetition, row.word, row.consonant)


def _mean_cell(values: Sequence[float]) -> Optional[dict]:
    if not values:
        return None
    d = descriptive(values)
    return {"mean": d.mean, "se": d.standard_error, "n": d.n}


def _column(rows: Sequence[TokenRow], column: str) -> list[float]:
    return [row.values[column] for row in rows if row.values.get(column) is not None]


def _anova_cell(
    groups: list[tuple[str, list[float]]], significance: float, paper_df: bool
) -> dict:
    """Run one ANOVA, or return an explicit insufficient-data marker."""
    try:
        if any(len(v) == 0 for _, v in groups) or len(groups) < 2:
            raise TooFewGroupsError(
                "empty group(s): " + ", ".join(f"{k}(n={len(v)})" for k, v in groups)
            )
        result = one_way_anova(GroupedSample.from_pairs(groups))
    except (TooFewGroupsError, ZeroWithinVarianceError, StopgemError) as exc:
        return {"status": "insufficient_data", "reason": str(exc)}
    cell = {
        "status": "ok",
        "F": result.f_stat,
        "df": [result.df_between, result.df_within],
        "p": result.p_value,
        "eta_sq": result.eta_sq,
        "effect": result.effect_label,
        "significant": result.p_value < significance,
        "n": [len(v) for _, v in groups],
    }
    if paper_df:
        cell["df_paper_style"] = [result.df_between, result.df_between + result.df_within]
    return cell


@dataclass(frozen=True)
class Report:
    tables: dict

    def to_json(self) -> str:
        return json.dumps(self.tables, indent=2, sort_keys=True) + "\n"

    def render_text(self) -> str:
        return render_text(self.tables)

    def plot_series(self) -> dict[str, str]:
        return plot_series(self.tables)


def build_report(
    rows: Sequence[TokenRow],
    *,
    significance: float = 0.05,
    paper_df: bool = False,
) -> Report:
    rows = sorted([r for r in rows], key=_sort_key)
    usable = [r for r in rows if not r.error]
    failed = [r for r in rows if r.error]

    geminates = [r for r in usable if r.gem_type in GEMINATE_TYPES]
    singletons = [r for r in usable if r.gem_type not in GEMINATE_TYPES]

    def of_type(gem_type: str) -> list[TokenRow]:
        return [r for r in geminates if r.gem_type == gem_type]

    def sb(rs):
        return [r for r in rs if r.burst_count == SINGLE_BURST]

    def db(rs):
        return [r for r in rs if r.burst_count == DOUBLE_BURST]

    # --- burst-count contingency by speaker and gemination form ---
    speakers = sorted({r.speaker for r in geminates})
    counts: dict = {"by_speaker": {}, "total": {}}
    for gem_type in GEMINATE_TYPES:
        rs = of_type(gem_type)
        counts["total"][gem_type] = {
            "single_burst": len(sb(rs)),
            "double_burst": len(db(rs)),
            "total": len(rs),
        }
    for speaker in speakers:
        counts["by_speaker"][speaker] = {}
        for gem_type in GEMINATE_TYPES:
            rs = [r for r in of_type(gem_type) if r.speaker == speaker]
            counts["by_speaker"][speaker][gem_type] = {
                "single_burst": len(sb(rs)),
                "double_burst": len(db(rs)),
                "total": len(rs),
            }

    # --- duration means by gemination form x SB/DB/combined ---
    split_columns = {"C1d_ms", "C2d_ms", "Cl1d_ms", "Cl2d_ms", "B1d_ms", "B2d_ms"}
    duration_means: dict = {}
    for gem_type in GEMINATE_TYPES:
        rs = of_type(gem_type)
        duration_means[gem_type] = {
            "single_burst": {c: _mean_cell(_column(sb(rs), c)) for c in DURATION_ORDER},
            "double_burst": {c: _mean_cell(_column(db(rs), c)) for c in DURATION_ORDER},
            # split columns only describe double-burst tokens; the pooled row
            # reports the shared parameters, like the published table
            "combined": {
                c: (None if c in split_columns else _mean_cell(_column(rs, c)))
                for c in DURATION_ORDER
            },
        }

    # --- singleton vs geminate durations and ratio ---
    sv: dict = {}
    for name, rs in (("singleton", singletons), ("geminate", geminates)):
        ratios = [r.values["ratio"] for r in rs if r.values.get("ratio") is not None]
        vd = _column(rs, "Vd_ms")
        cd = _column(rs, "Cd_ms")
        sv[name] = {
            "Vd_ms": _mean_cell(vd),
            "Cd_ms": _mean_cell(cd),
            "Cld_ms": _mean_cell(_column(rs, "Cld_ms")),
            "Bd_ms": _mean_cell(_column(rs, "Bd_ms")),
            "ratio_mean_of_tokens": _mean_cell(ratios),
            "ratio_of_means": (
                (sum(cd) / len(cd)) / (sum(vd) / len(vd)) if vd and cd and sum(vd) else None
            ),
        }

    def cell(groups):
        return _anova_cell(groups, significance, paper_df)

    # --- A1: burst power, first vs second burst (double-burst tokens) ---
    def power_groups(rs):
        return [
            ("first_burst", _column(db(rs), "P_burst1")),
            ("second_burst", _column(db(rs), "P_burst2")),
        ]

    anova_power = {
        "lexical": cell(power_groups(of_type("lexical"))),
        "syntactic": cell(power_groups(of_type("syntactic"))),
        "combined": cell(power_groups(geminates)),
    }

    # --- A2: C1 vs C2 durations (double-burst tokens) ---
    a2_params = [
        ("consonant_duration", "C1d_ms", "C2d_ms"),
        ("closure_duration", "Cl1d_ms", "Cl2d_ms"),
        ("burst_duration", "B1d_ms", "B2d_ms"),
    ]
    anova_c1_c2 = {
        gem_type: {
            name: cell(
                [
                    ("first", _column(db(of_type(gem_type)), col1)),
                    ("second", _column(db(of_type(gem_type)), col2)),
                ]
            )
            for name, col1, col2 in a2_params
        }
        for gem_type in GEMINATE_TYPES
    }

    # --- A3: single vs double burst (Cd, Cld, Bd vs average Bd) ---
    def a3_cells(rs):
        half_bd = [v / 2.0 for v in _column(db(rs), "Bd_ms")]
        return {
            "consonant_duration": cell(
                [("single", _column(sb(rs), "Cd_ms")), ("double", _column(db(rs), "Cd_ms"))]
            ),
            "closure_duration": cell(
                [("single", _column(sb(rs), "Cld_ms")), ("double", _column(db(rs), "Cld_ms"))]
            ),
            "burst_vs_average_burst": cell(
                [("single", _column(sb(rs), "Bd_ms")), ("double_avg", half_bd)]
            ),
        }

    anova_sb_db = {
        "lexical": a3_cells(of_type("lexical")),
        "syntactic": a3_cells(of_type("syntactic")),
        "combined": a3_cells(geminates),
    }

    # --- A4: lexical vs syntactic (Vd, Cd, ratio) over geminates ---
    def a4_groups(column):
        return [
            ("lexical", _column(of_type("lexical"), column)),
            ("syntactic", _column(of_type("syntactic"), column)),
        ]

    anova_lex_syn = {
        "Vd_ms": cell(a4_groups("Vd_ms")),
        "Cd_ms": cell(a4_groups("Cd_ms")),
        "ratio": cell(a4_groups("ratio")),
    }

    # --- A5: ratio, single vs double burst, per gemination form ---
    anova_ratio_sb_db = {
        gem_type: cell(
            [
                ("single", _column(sb(of_type(gem_type)), "ratio")),
                ("double", _column(db(of_type(gem_type)), "ratio")),
            ]
        )
        for gem_type in GEMINATE_TYPES
    }

    # --- plot-ready series (burst power, C1/C2 durations, Vd/Cd overview) ---
    plot_power = []
    for group_name, rs in (
        ("lexical", of_type("lexical")), ("syntactic", of_type("syntactic")),
        ("combined", geminates),
    ):
        for series, column in (("first_burst", "P_burst1"), ("second_burst", "P_burst2")):
            plot_power.append(
                {"group": group_name, "series": series, **_stat_dict(_column(db(rs), column))}
            )
    plot_c1_c2 = []
    for gem_type in GEMINATE_TYPES:
        for param, col1, col2 in a2_params:
            for series, column in (("first", col1), ("second", col2)):
                plot_c1_c2.append(
                    {
                        "group": gem_type, "parameter": param, "series": series,
                        **_stat_dict(_column(db(of_type(gem_type)), column)),
                    }
                )
    plot_overview = []
    for gem_type in GEMINATE_TYPES:
        for group, rs in (("single_burst", sb(of_type(gem_type))),
                          ("double_burst", db(of_type(gem_type)))):
            for column in ("Vd_ms", "Cd_ms"):
                plot_overview.append(
                    {
                        "group": gem_type, "series": group, "parameter": column,
                        **_stat_dict(_column(rs, column)),
                    }
                )

    tables = {
        "token_counts": {
            "total_rows": len(rows),
            "analyzed": len(usable),
            "failed": len(failed),
            "failed_errors": sorted({r.error for r in failed}),
        },
        "burst_counts": counts,
        "duration_means": duration_means,
        "singleton_vs_geminate": sv,
        "anova_burst_power": anova_power,
        "anova_c1_vs_c2_durations": anova_c1_c2,
        "anova_single_vs_double": anova_sb_db,
        "anova_lexical_vs_syntactic": anova_lex_syn,
        "anova_ratio_single_vs_double": anova_ratio_sb_db,
        "plot_data": {
            "burst_power": plot_power,
            "c1_c2_durations": plot_c1_c2,
            "duration_overview": plot_overview,
        },
        "config": {"significance": significance, "paper_df": paper_df},
        "notes": NOTES,
    }
    return Report(tables)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _fmt_p(p: float) -> str:
    return "<0.001" if p < 0.001 else f"{p:.3f}"


def _fmt_eta(eta: float) -> str:
    return "<0.001" if eta < 0.001 else f"{eta:.3f}"


def _fmt_mean(cell_value: Optional[dict]) -> str:
    return "-" if cell_value is None else f"{cell_value['mean']:.2f}"


def _text_table(headers: list[str], rows: list[list[str]]) -> list[str]:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, value in enumerate(row):
            widths[i] = max(widths[i], len(value))
    def line(cells):
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(headers), line(["-" * w for w in widths])]
    out += [line(r) for r in rows]
    return out


def _anova_rows(name: str, cell: dict, paper_df: bool) -> list[str]:
    if cell.get("status") != "ok":
        return [f"{name}: insufficient data ({cell.get('reason', 'no reason recorded')})"]
    df = f"({cell['df'][0]}, {cell['df'][1]})"
    extra = ""
    if paper_df and "df_paper_style" in cell:
        ps = cell["df_paper_style"]
        extra = f"  [paper-style df ({ps[0]}, {ps[1]})]"
    sig = " *" if cell["significant"] else ""
    return [
        f"{name}: df {df}  F {cell['F']:.3f}  p {_fmt_p(cell['p'])}{sig}  "
        f"eta^2 {_fmt_eta(cell['eta_sq'])} ({cell['effect']}){extra}"
    ]


def render_text(tables: dict) -> str:
    out: list[str] = []
    paper_df = tables["config"]["paper_df"]

    out.append("=== Token counts ===")
    tc = tables["token_counts"]
    out.append(
        f"rows {tc['total_rows']}  analyzed {tc['analyzed']}  failed {tc['failed']}"
    )
    if tc["failed_errors"]:
        out.append("failure kinds: " + "; ".join(tc["failed_errors"]))
    out.append("")

    out.append("=== Single vs double bursts by speaker and gemination form ===")
    bc = tables["burst_counts"]
    headers = ["speaker", "lex SB", "lex DB", "lex total", "syn SB", "syn DB", "syn total"]
    def count_row(label, per_type):
        lex, syn = per_type["lexical"], per_type["syntactic"]
        return [
            label,
            str(lex["single_burst"]), str(lex["double_burst"]), str(lex["total"]),
            str(syn["single_burst"]), str(syn["double_burst"]), str(syn["total"]),
        ]
    rows = [count_row(s, bc["by_speaker"][s]) for s in sorted(bc["by_speaker"])]
    rows.append(count_row("Total", bc["total"]))
    out += _text_table(headers, rows)
    out.append("")

    out.append("=== Mean durations (ms) by gemination form and burst count ===")
    headers = ["form", "group"] + [c.replace("_ms", "") for c in DURATION_ORDER]
    rows = []
    for gem_type in GEMINATE_TYPES:
        for group, label in (("single_burst", "SB"), ("double_burst", "DB"), ("combined", "Combined")):
            cells = tables["duration_means"][gem_type][group]
            rows.append([gem_type, label] + [_fmt_mean(cells[c]) for c in DURATION_ORDER])
    out += _text_table(headers, rows)
    out.append("")

    out.append("=== Singleton vs geminate stops ===")
    headers = ["class", "Vd", "Cd", "Cld", "Bd", "ratio(mean of tokens)", "ratio(of means)"]
    rows = []
    for name in ("singleton", "geminate"):
        sv = tables["singleton_vs_geminate"][name]
        rom = sv["ratio_of_means"]
        rows.append(
            [
                name,
                _fmt_mean(sv["Vd_ms"]), _fmt_mean(sv["Cd_ms"]),
                _fmt_mean(sv["Cld_ms"]), _fmt_mean(sv["Bd_ms"]),
                "-" if sv["ratio_mean_of_tokens"] is None
                else f"{sv['ratio_mean_of_tokens']['mean']:.2f}",
                "-" if rom is None else f"{rom:.2f}",
            ]
        )
    out += _text_table(headers, rows)
    out.append("")

    out.append("=== ANOVA: burst power, first vs second burst (double-burst tokens) ===")
    for key in ("lexical", "syntactic", "combined"):
        out += _anova_rows(key, tables["anova_burst_power"][key], paper_df)
    out.append("")

    out.append("=== ANOVA: C1 vs C2 durations (double-burst tokens) ===")
    for gem_type in GEMINATE_TYPES:
        for name in ("consonant_duration", "closure_duration", "burst_duration"):
            out += _anova_rows(
                f"{gem_type} {name}", tables["anova_c1_vs_c2_durations"][gem_type][name], paper_df
            )
    out.append("")

    out.append("=== ANOVA: single vs double burst ===")
    for key in ("lexical", "syntactic", "combined"):
        for name in ("consonant_duration", "closure_duration", "burst_vs_average_burst"):
            out += _anova_rows(
                f"{key} {name}", tables["anova_single_vs_double"][key][name], paper_df
            )
    out.append("")

    out.append("=== ANOVA: lexical vs syntactic geminates ===")
    for name in ("Vd_ms", "Cd_ms", "ratio"):
        out += _anova_rows(name, tables["anova_lexical_vs_syntactic"][name], paper_df)
    out.append("")

    out.append("=== ANOVA: consonant/vowel ratio, single vs double burst ===")
    for gem_type in GEMINATE_TYPES:
        out += _anova_rows(gem_type, tables["anova_ratio_single_vs_double"][gem_type], paper_df)
    out.append("")

    out.append("=== Notes ===")
    for i, note in enumerate(tables["notes"], 1):
        out.append(f"{i}. {note}")
    out.append("")
    return "\n".join(out)


def _stat_dict(values: Sequence[float]) -> dict:
    if not values:
        return {"mean": None, "se": None, "n": 0}
    d = descriptive(values)
    return {"mean": d.mean, "se": d.standard_error, "n": d.n}


def plot_series(tables: dict) -> dict[str, str]:
    """Plot-ready CSV text for the burst-power and duration figures."""

    def csv_text(headers: list[str], entries: list[dict]) -> str:
        lines = [",".join(headers)]
        for entry in entries:
            cells = []
            for h in headers:
                v = entry.get(h)
                cells.append("" if v is None else (repr(v) if isinstance(v, float) else str(v)))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    pd = tables["plot_data"]
    return {
        "burst_power": csv_text(
            ["group", "series", "mean", "se", "n"], pd["burst_power"]
        ),
        "c1_c2_durations": csv_text(
            ["group", "parameter", "series", "mean", "se", "n"], pd["c1_c2_durations"]
        ),
        "duration_overview": csv_text(
            ["group", "series", "parameter", "mean", "se", "n"], pd["duration_overview"]
        ),
    }
