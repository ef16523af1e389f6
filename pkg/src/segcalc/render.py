"""Grid renderings of pages and tables: fixed-width text, SVG and TSV.

Every figure is first reduced to a list of :class:`Panel` values; the text,
SVG and TSV writers consume only that intermediate, so the three outputs
always agree.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field

from .groth import UNIT, VirtualRep
from .segments import DomainError, fmt_fraction
from .sheaves import VirtualSheaf, mgr
from .spectral import (
    Case, TableFunctor, cohomology_table, global_ss, gr_cohomology, homology, mge_page, mle_page,
    SSPage,
)

FIGURES = ("fig1", "fig4", "fig5", "fig6", "fig9", "fig10")
DEFAULTS = {
    "fig1": {"s": 4},
    "fig4": {"s": 4, "g": 2},
    "fig5": {"s": 4, "g": 2},
    "fig6": {"s": 4},
    "fig9": {"d": 24, "g": 6},
    "fig10": {"s": 4, "g": 2},
}
ALLOWED = {"fig1": {"s"}, "fig4": {"s", "g", "d"}, "fig5": {"s", "g", "d"}, "fig6": {"s"},
           "fig9": {"d", "g"}, "fig10": {"s", "g"}}


@dataclass
class Panel:
    title: str
    xlabel: str
    ylabel: str
    cells: dict = field(default_factory=dict)  # (x, y) -> list of label strings
    arrows: list = field(default_factory=list)  # ((x, y), (x, y), label)

    def rows(self):
        """Sorted (x, y, label) triples; the TSV body."""
        return [(x, y, lab) for (x, y) in sorted(self.cells) for lab in self.cells[(x, y)]]


def _tate(tw) -> str:
    return fmt_fraction(tw.tate)


def rep_labels(v: VirtualRep) -> list[str]:
    out = []
    for w, tw, c in v:
        body = "1" if w is UNIT else w.short()
        out.append(f"{'' if c == 1 else f'{c}*'}{body}({_tate(tw)})")
    return out


def sheaf_labels(v: VirtualSheaf) -> list[str]:
    out = []
    for sym, c in v:
        body = "1" if sym.inducing is UNIT else sym.inducing.short()
        out.append(f"{'' if c == 1 else f'{c}*'}t{sym.t}:{body}({_tate(sym.twist)})")
    return out


def _labels(v):
    return sheaf_labels(v) if isinstance(v, VirtualSheaf) else rep_labels(v)


def page_panel(page: SSPage, title: str, xlabel="i", ylabel="j", prefix=None) -> Panel:
    p = Panel(title, xlabel, ylabel)
    for pos in page.nonzero_cells():
        lab = _labels(page.cells[pos])
        p.cells[pos] = ([prefix(pos)] if prefix else []) + lab
    for d in page.differentials:
        if d.nonzero:
            p.arrows.append((d.source, d.target, f"d{d.length}"))
    return p


def _check(figure, params):
    if figure not in FIGURES:
        raise DomainError(f"unknown figure {figure!r}")
    extra = {k for k, v in params.items() if v is not None} - ALLOWED[figure]
    if extra:
        raise DomainError(f"{figure} does not take {sorted(extra)}")
    out = dict(DEFAULTS[figure])
    out.update({k: v for k, v in params.items() if v is not None})
    return out


def figure_panels(figure: str, **params) -> list[Panel]:
    p = _check(figure, params)
    if figure == "fig1":
        s = p["s"]
        panel = Panel(f"MGr_k({s}) strata", "t", "k")
        for k in range(1 - s, s):
            for t, tw in mgr(s, k):
                panel.cells[(t, k)] = [f"x({_tate(tw)})"]
        return [panel]
    if figure == "fig6":
        s = p["s"]
        p1 = mle_page(s, 1)
        return [page_panel(p1, f"MLE_1({s})"), page_panel(homology(p1, 99), f"MLE_inf({s})")]
    if figure in ("fig4", "fig5"):
        case = Case.SP if figure == "fig4" else Case.SPEH
        g = p["g"]
        d = p.get("d") or p["s"] * g
        if params.get("d") and params.get("s") and d != params["s"] * g:
            raise DomainError(f"d={d} does not equal s*g")
        ss = global_ss(d, g, case)
        s = ss.s

        def stratum(pos):
            t = (d - pos[0]) // g if case is Case.SP else s - pos[0] // (g + 1)
            return f"t={t}"

        e2 = page_panel(ss.e2, f"E2 {case.value}_{s} g={g}", "p", "q", stratum)
        e3 = page_panel(ss.e_infinity(), f"E{ss.connecting_page + 1} = E_inf", "p", "q")
        return [e2, e3]
    if figure == "fig9":
        d, g = p["d"], p["g"]
        s = d // g
        panel = Panel(f"h^i gr_k, g={g}, d={d}", "i", "k")
        for k in range(1 - s, s):
            for i in range(-d - 1, 1):
                v = gr_cohomology(d, g, i, k)
                if v:
                    panel.cells[(i, k)] = sheaf_labels(v)
        return [panel, page_panel(mge_page(d, g, 2), f"MGE_2 g={g}, d={d}")]
    if figure == "fig10":
        s, g = p["s"], p["g"]
        panel = Panel(f"H^i(gr_k)[Speh_{s}], g={g}", "i", "k")
        cells = {}
        for k in range(1 - s, s):
            for t, tw in mgr(s, k, g):
                for i, e in cohomology_table(Case.SPEH, g, t, s, TableFunctor.J_INTERMEDIATE).items():
                    cells[(i, k)] = cells.get((i, k), VirtualRep()) + e.rep(g).twisted(tw)
        panel.cells = {pos: rep_labels(v) for pos, v in sorted(cells.items()) if v}
        return [panel]
    raise DomainError(figure)  # pragma: no cover


# ---------------------------------------------------------------------------
# writers

def panel_text(panel: Panel) -> str:
    if not panel.cells:
        return f"== {panel.title} ==\n(empty)\n"
    xs = sorted({x for x, _ in panel.cells})
    ys = sorted({y for _, y in panel.cells}, reverse=True)
    xs = list(range(xs[0], xs[-1] + 1))
    ys = list(range(ys[0], ys[-1] - 1, -1))
    width = max(len(lab) for labs in panel.cells.values() for lab in labs)
    width = max(width, max(len(str(x)) for x in xs), 1)
    ylw = max(len(str(y)) for y in ys + [panel.ylabel])
    lines = [f"== {panel.title} ==", f"{panel.ylabel:>{ylw}} | " + " ".join(f"{x:^{width}}" for x in xs)]
    lines.append("-" * len(lines[-1]))
    for y in ys:
        depth = max((len(panel.cells.get((x, y), [])) for x in xs), default=0)
        for r in range(max(depth, 1)):
            head = f"{y:>{ylw}}" if r == 0 else " " * ylw
            row = []
            for x in xs:
                labs = panel.cells.get((x, y), [])
                cell = labs[r] if r < len(labs) else ("." if r == 0 else "")
                row.append(f"{cell:^{width}}")
            lines.append(f"{head} | " + " ".join(row).rstrip())
    lines.append(f"{'':>{ylw}}   {panel.xlabel} ->")
    for a, b, lab in sorted(panel.arrows):
        lines.append(f"  {lab}: ({a[0]},{a[1]}) > ({b[0]},{b[1]})")
    return "\n".join(lines) + "\n"


def render_text(panels) -> str:
    return "\n".join(panel_text(p) for p in panels)


def render_tsv(panels) -> str:
    out = ["panel\tx\ty\tlabel"]
    for k, p in enumerate(panels):
        for x, y, lab in p.rows():
            out.append(f"{k}\t{x}\t{y}\t{lab}")
        for a, b, lab in sorted(p.arrows):
            out.append(f"{k}\t{a[0]},{a[1]}\t{b[0]},{b[1]}\t{lab}")
    return "\n".join(out) + "\n"


def render_svg(panels) -> str:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rc = {"svg.hashsalt": "segcalc", "svg.fonttype": "none", "font.family": "monospace", "font.size": 7}
    with matplotlib.rc_context(rc):
        fig, axes = plt.subplots(len(panels), 1, figsize=(10, 5 * len(panels)), squeeze=False)
        for ax, panel in zip(axes[:, 0], panels):
            ax.set_title(panel.title)
            ax.set_xlabel(panel.xlabel)
            ax.set_ylabel(panel.ylabel)
            if panel.cells:
                xs = [x for x, _ in panel.cells]
                ys = [y for _, y in panel.cells]
                ax.set_xlim(min(xs) - 1, max(xs) + 1)
                ax.set_ylim(min(ys) - 1, max(ys) + 1)
            for (x, y), labs in sorted(panel.cells.items()):
                ax.plot([x], [y], marker="o", markersize=2, color="black")
                ax.text(x, y, "\n".join(labs), ha="center", va="bottom", fontsize=5)
            for a, b, lab in sorted(panel.arrows):
                ax.annotate("", xy=b, xytext=a, arrowprops={"arrowstyle": "->", "color": "tab:red"})
            ax.grid(True, linewidth=0.3)
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()
