"""Independent validation of right-veering certificates.

The checker walks a certificate tree and re-verifies every rule's side
condition directly against the curve and arc tables.  It shares only the
table constants with the prover, none of its logic: positivity scans,
word beheading, arc-avoidance checks and the composition bookkeeping are
re-implemented here from scratch, so a bug in the prover cannot hide
behind its own definitions.
"""

from .pages import ARCS, CURVES, FOUR_HOLED_SPHERE


class CertificateError(ValueError):
    """The certificate does not constitute a valid derivation."""


def _letters_ok(letters):
    for entry in letters:
        if len(entry) != 2:
            raise CertificateError(f"malformed letter {entry!r}")
        name, exp = entry
        if name not in CURVES:
            raise CertificateError(f"unknown curve {name!r} in certificate word")
        if not isinstance(exp, int) or exp == 0:
            raise CertificateError(f"bad exponent {exp!r} for curve {name!r}")


def _boundary_curve(boundary):
    for name, curve in CURVES.items():
        if curve.is_boundary_parallel and curve.boundary == boundary:
            return name
    raise CertificateError(f"no boundary-parallel curve for {boundary!r}")


def _intersection(curve_name, arc_name):
    for c, n in ARCS[arc_name].intersections:
        if c == curve_name:
            return n
    raise CertificateError(f"arc table has no entry for curve {curve_name!r}")


def _concat(lhs, rhs):
    out = list(lhs)
    for name, exp in rhs:
        if out and out[-1][0] == name:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((name, merged))
        else:
            out.append((name, exp))
    return tuple(out)


def _check_node(node, boundary):
    if node.boundary != boundary:
        raise CertificateError(
            f"node concludes at {node.boundary!r} inside the {boundary!r} goal"
        )
    letters = tuple(node.word.letters)
    _letters_ok(letters)

    if node.rule == "POS":
        if node.children:
            raise CertificateError("POS must be a leaf")
        for name, exp in letters:
            if exp < 1:
                raise CertificateError(
                    f"POS applied to a word with a negative twist along {name!r}"
                )
        return

    if node.rule == "ARC":
        if node.children:
            raise CertificateError("ARC must be a leaf")
        if node.arc not in ARCS:
            raise CertificateError(f"unknown arc {node.arc!r}")
        arc = ARCS[node.arc]
        if boundary not in arc.endpoints:
            raise CertificateError(
                f"arc {node.arc!r} has no endpoint on {boundary!r}"
            )
        if not letters:
            raise CertificateError("ARC applied to the empty word")
        head_name, head_exp = letters[0]
        if head_name != _boundary_curve(boundary):
            raise CertificateError(
                f"ARC head twist is along {head_name!r}, not the curve "
                f"parallel to {boundary!r}"
            )
        if head_exp < 1:
            raise CertificateError("ARC head twist must be positive")
        remainder = ((head_name, head_exp - 1),) + letters[1:]
        for name, exp in remainder:
            if exp == 0:
                continue
            if _intersection(name, node.arc) == 0:
                continue
            curve = CURVES[name]
            if (
                curve.is_boundary_parallel
                and curve.boundary in arc.endpoints
                and exp >= 1
            ):
                continue
            raise CertificateError(
                f"ARC side condition fails at curve {name!r} (exponent {exp})"
            )
        return

    if node.rule == "COMP":
        if len(node.children) != 2:
            raise CertificateError("COMP needs exactly two children")
        left, right = node.children
        if _concat(left.word.letters, right.word.letters) != letters:
            raise CertificateError(
                "COMP conclusion is not the composition of its children"
            )
        _check_node(left, boundary)
        _check_node(right, boundary)
        return

    raise CertificateError(f"unknown rule {node.rule!r}")


def check_certificate(cert) -> bool:
    """Validate a certificate; raises CertificateError, returns True if valid.

    Checks that the goals cover every boundary component of the four-holed
    sphere, that each root concludes the certified word, and that every
    rule application satisfies its side conditions.
    """
    boundaries = tuple(b for b, _ in cert.goals)
    if sorted(boundaries) != sorted(FOUR_HOLED_SPHERE.boundaries):
        raise CertificateError(
            f"goals cover {boundaries}, expected every component of the page"
        )
    _letters_ok(tuple(cert.word.letters))
    for boundary, node in cert.goals:
        if tuple(node.word.letters) != tuple(cert.word.letters):
            raise CertificateError(
                f"root node at {boundary!r} concludes {node.word}, "
                f"not the certified word {cert.word}"
            )
        _check_node(node, boundary)
    return True
