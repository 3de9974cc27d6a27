"""
Renders differential complexes as tikzcd diagrams of parity sequences.

Rows are chain positions, highest at the top; an arrow climbing d rows carries
the block of the differential between the two positions, and arrows climbing
two or more rows are drawn bent.
"""

from config import LATEX_BEND, LATEX_ROW_SEP, LATEX_TALL_BEND, LATEX_TALL_ROWS
from utils.formatter import latex_entry

HEADER = r"\begin{tikzcd}[ampersand replacement=\&]"
TALL_HEADER = rf"\begin{{tikzcd}}[row sep={LATEX_ROW_SEP},ampersand replacement=\&]"
FOOTER = r"\end{tikzcd}"
XI_BAR = r"\bar\xi"


def latex_summand(summand):
    """E(I){p} for a summand E(I)<t>, with the twist label omitted at zero."""
    stratum = summand.stratum
    inner = ",".join(str(i) for i in stratum.members) if stratum.members else r"\varnothing"
    text = rf"\mathcal{{E}}({inner})"
    if summand.twist:
        text += rf"\{{{-summand.twist}\}}"
    return text


def _matrix(cells):
    """A single cell as is, anything larger as a bracketed smallmatrix."""
    if len(cells) == 1 and len(cells[0]) == 1:
        return cells[0][0]
    body = r" \\ ".join(" & ".join(row) for row in cells)
    return rf"\left[\begin{{smallmatrix}} {body} \end{{smallmatrix}}\right]"


def _negative(scalar):
    coeff = scalar.terms()[0][1]
    return scalar.ring.poly_ring.domain.to_sympy(coeff) < 0


def block_label(matrix, rows, cols):
    """Arrow label for the block of matrix with the given target rows and source columns.

    Zero cells are blank in a block with at least two rows and two columns,
    and written 0 in a row or column vector. A block whose entries are all
    multiples of xb is drawn as xb (or -xb) times the matrix of cofactors.
    """
    entries = {(r, c): matrix.get(r, c) for r in rows for c in cols}
    nonzero = [v for v in entries.values() if not v.is_zero]
    prefix = ""
    if nonzero and all(v.split_xi_bar()[0].is_zero for v in nonzero):
        factors = {key: v.split_xi_bar()[1] for key, v in entries.items()}
        if all(_negative(v) for v in factors.values() if not v.is_zero):
            factors = {key: -v for key, v in factors.items()}
            prefix = rf"-{XI_BAR} \cdot "
        else:
            prefix = rf"{XI_BAR} \cdot "
        entries = factors
    blank = "" if len(rows) > 1 and len(cols) > 1 else "0"
    cells = [
        [
            latex_entry(entries[(r, c)], matrix.source[c].stratum, matrix.target[r].stratum)
            if not entries[(r, c)].is_zero
            else blank
            for c in cols
        ]
        for r in rows
    ]
    return prefix + _matrix(cells)


def render_latex(complex_):
    """
    Render a complex in canonical order as a tikzcd diagram.

    Args:
        complex_ (DifferentialComplex): The complex to draw

    Returns:
        str: LaTeX source ending in a newline; the zero complex gives a
        diagram holding a single 0
    """
    if not len(complex_):
        return "\n".join([HEADER, "0", FOOTER]) + "\n"

    canon = complex_.canonical()
    obj, delta = canon.object, canon.differential
    positions = sorted(obj.positions(), reverse=True)
    tall = len(positions) >= LATEX_TALL_ROWS
    bend = LATEX_TALL_BEND if tall else LATEX_BEND
    index_of_row = {p: row for row, p in enumerate(positions)}

    rows = []
    for p in positions:
        source_indices = obj.indices_at(p)
        lines = [r" \oplus ".join(latex_summand(obj[i]) for i in source_indices)]
        targets = sorted(
            {obj[r].position for (r, c) in delta.entries if c in source_indices},
            key=lambda q: (abs(q - p), -q),
        )
        for q in targets:
            label = block_label(delta, obj.indices_at(q), source_indices)
            steps = index_of_row[p] - index_of_row[q]
            direction = "u" * steps if steps > 0 else "d" * -steps
            if steps == 0:
                lines.append(rf'  \ar[loop right, "{{{label}}}"]')
            elif abs(steps) == 1:
                lines.append(rf'  \ar[{direction}, "{{{label}}}"]')
            else:
                lines.append(rf'  \ar[{direction}, bend right={bend}, "{{{label}}}"' + "']")
        rows.append("\n".join(lines))
    return "\n".join([TALL_HEADER if tall else HEADER, " \\\\\n".join(rows), FOOTER]) + "\n"
