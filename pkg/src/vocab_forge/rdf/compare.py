"""Graph isomorphism by colour refinement plus backtracking."""

from __future__ import annotations

from collections import Counter, defaultdict

from .terms import BlankNode, Graph, term_key


def _is_ground(t):
    return not isinstance(t.subject, BlankNode) and not isinstance(t.object, BlankNode)


def _colour_jointly(triples_a, nodes_a, triples_b, nodes_b):
    """Refine blank-node colours over both graphs with one shared palette."""
    nodes = [(0, n) for n in nodes_a] + [(1, n) for n in nodes_b]
    edges = defaultdict(list)
    for side, triples in ((0, triples_a), (1, triples_b)):
        for t in triples:
            if isinstance(t.subject, BlankNode):
                edges[(side, t.subject)].append(t)
            if isinstance(t.object, BlankNode) and t.object != t.subject:
                edges[(side, t.object)].append(t)

    colours = {key: 0 for key in nodes}
    n_classes = 1
    while True:
        sigs = {}
        for side, n in nodes:

            def other(term):
                if isinstance(term, BlankNode):
                    return ("b", colours[(side, term)])
                return ("g",) + term_key(term)

            sig = []
            for t in edges[(side, n)]:
                if t.subject == n and t.object == n:
                    sig.append(("self", t.predicate.value))
                elif t.subject == n:
                    sig.append(("out", t.predicate.value) + other(t.object))
                else:
                    sig.append(("in", t.predicate.value) + other(t.subject))
            sigs[(side, n)] = (colours[(side, n)], tuple(sorted(sig)))
        palette = {sig: i for i, sig in enumerate(sorted(set(sigs.values())))}
        colours = {key: palette[sigs[key]] for key in nodes}
        if len(palette) == n_classes:
            break
        n_classes = len(palette)
    return ({n: colours[(0, n)] for n in nodes_a}, {n: colours[(1, n)] for n in nodes_b})


def graph_isomorphic(a: Graph, b: Graph) -> bool:
    """True iff some bijection of blank nodes maps a's triples onto b's."""
    if len(a) != len(b):
        return False
    ground_a = {t for t in a.triples if _is_ground(t)}
    ground_b = {t for t in b.triples if _is_ground(t)}
    if ground_a != ground_b:
        return False
    rest_a = [t for t in a.triples if not _is_ground(t)]
    rest_b = {t for t in b.triples if not _is_ground(t)}
    nodes_a = sorted(a.blank_nodes(), key=term_key)
    nodes_b = sorted(b.blank_nodes(), key=term_key)
    if len(nodes_a) != len(nodes_b):
        return False
    if not nodes_a:
        return True
    col_a, col_b = _colour_jointly(rest_a, nodes_a, rest_b, nodes_b)
    if Counter(col_a.values()) != Counter(col_b.values()):
        return False
    candidates = defaultdict(list)
    for n in nodes_b:
        candidates[col_b[n]].append(n)
    order = sorted(nodes_a, key=lambda n: (len(candidates[col_a[n]]), term_key(n)))

    touching = defaultdict(list)
    for t in rest_a:
        for term in (t.subject, t.object):
            if isinstance(term, BlankNode):
                touching[term].append(t)

    mapping, used = {}, set()

    def mapped(term):
        return mapping.get(term, term) if isinstance(term, BlankNode) else term

    def consistent(node):
        for t in touching[node]:
            s, o = t.subject, t.object
            if (isinstance(s, BlankNode) and s not in mapping) or (isinstance(o, BlankNode) and o not in mapping):
                continue
            if type(t)(mapped(s), t.predicate, mapped(o)) not in rest_b:
                return False
        return True

    def search(i):
        if i == len(order):
            return True
        n = order[i]
        for cand in candidates[col_a[n]]:
            if cand in used:
                continue
            mapping[n] = cand
            used.add(cand)
            if consistent(n) and search(i + 1):
                return True
            del mapping[n]
            used.discard(cand)
        return False

    return search(0)
