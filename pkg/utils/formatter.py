"""
Text and LaTeX formatting of scalars and morphism words.
"""

from collections import OrderedDict

TEXT_NAMES = {"xb": "xb", "r": "r", "x": "x"}
LATEX_NAMES = {"xb": r"\bar\xi", "r": r"\mathsf{r}", "x": r"\xi"}


def _coefficient(scalar, coeff):
    return scalar.ring.poly_ring.domain.to_sympy(coeff)


def _join_signed(parts):
    text = ""
    for part in parts:
        if not text:
            text = part
        elif part.startswith("-"):
            text += " - " + part[1:]
        else:
            text += " + " + part
    return text


def _factor(name, exp, latex):
    if latex:
        if name.startswith("a"):
            base = rf"\alpha_{{{name[1:]}}}"
        else:
            base = LATEX_NAMES[name]
        return base if exp == 1 else f"{base}^{{{exp}}}"
    return name if exp == 1 else f"{name}^{exp}"


def _monomial_text(names, exps, latex):
    sep = " " if latex else "*"
    return sep.join(_factor(name, e, latex) for name, e in zip(names, exps) if e)


def _term_text(coeff, mono, latex):
    if not mono:
        return str(coeff)
    if coeff == 1:
        return mono
    if coeff == -1:
        return "-" + mono
    return f"{coeff} {mono}" if latex else f"{coeff}*{mono}"


def _groups(scalar):
    """Terms grouped by (xb exponent, r exponent), each group in ring order."""
    sring = scalar.ring
    groups = OrderedDict()
    for monom, coeff in scalar.terms():
        key = (monom[sring.xb_index], monom[sring.r_index])
        groups.setdefault(key, []).append((monom[: sring.n], _coefficient(scalar, coeff)))
    return [(key, groups[key]) for key in sorted(groups)]


def _render(scalar, latex):
    if scalar.is_zero:
        return "0"
    sring = scalar.ring
    inner_names = sring.names[: sring.n]
    mul = " " if latex else "*"
    parts = []
    for (e, m), terms in _groups(scalar):
        prefix = []
        if e:
            prefix.append(_factor("xb", 1, latex))
        if m:
            prefix.append(_factor("r", m, latex))
        prefix_text = mul.join(prefix)
        inner = [_term_text(c, _monomial_text(inner_names, mono, latex), latex) for mono, c in terms]
        if not prefix:
            parts.extend(inner)
            continue
        if len(terms) == 1 and not any(terms[0][0]):
            coeff = terms[0][1]
            parts.append(_term_text(coeff, prefix_text, latex))
            continue
        inner_text = _join_signed(inner)
        parts.append(f"{prefix_text}{mul}({inner_text})" if not latex else f"{prefix_text}({inner_text})")
    return _join_signed(parts)


def format_scalar(scalar):
    """Format a scalar in its canonical text form.

    Args:
        scalar (Scalar): The scalar to format

    Returns:
        str: Text such as "xb*r^2*(a1^2*x + 3*a2)"
    """
    return _render(scalar, latex=False)


def parse_scalar(text, scalar_ring):
    """Parse the canonical text form of a scalar.

    Args:
        text (str): The scalar text
        scalar_ring (ScalarRing): Ring the scalar belongs to

    Returns:
        Scalar: Parsed scalar (zero for empty text)
    """
    if not text or not text.strip():
        return scalar_ring.zero
    return scalar_ring.parse(text)


def latex_scalar(scalar):
    """LaTeX form of a scalar using alpha, xi, r and bar-xi."""
    return _render(scalar, latex=True)


def format_word(source, target, latex=False):
    """The implicit generator word of a morphism E(source) -> E(target).

    Args:
        source (Subset): Source stratum
        target (Subset): Target stratum
        latex (bool): Emit LaTeX letters instead of text letters

    Returns:
        str: Letters for source minus target then target minus source, or "" for the empty word
    """
    eps = sorted(set(source.members) - set(target.members))
    eta = sorted(set(target.members) - set(source.members))
    if latex:
        letters = [rf"\dot\epsilon_{{{i}}}" for i in eps] + [rf"\dot\eta_{{{i}}}" for i in eta]
        return " ".join(letters)
    return "*".join([f"e{i}" for i in eps] + [f"h{i}" for i in eta])


def format_morphism(morphism):
    """Format a normal morphism as "e1*h2 @ (a1 + a2)"."""
    word = format_word(morphism.source, morphism.target) or "id"
    return f"{word} @ ({format_scalar(morphism.scalar)})"


def latex_entry(scalar, source, target):
    """LaTeX cell for a matrix entry: scalar times the implicit word."""
    if scalar.is_zero:
        return "0"
    word = format_word(source, target, latex=True)
    text = latex_scalar(scalar)
    if text == "1":
        return word or r"\mathrm{id}"
    if text == "-1":
        return "-" + (word or r"\mathrm{id}")
    if not word:
        return text
    if " + " in text or " - " in text:
        return f"({text}) {word}"
    return f"{text} {word}"
