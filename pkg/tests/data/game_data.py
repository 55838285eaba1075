"""
Small games with known answers.

Every builder returns ``(net, link_costs)`` with link cost domains of
twice the session rate, the way scenario files are compiled.
"""

from src.marginals import MarginalFn
from src.network import Network

from tests.data.network_data import CHAIN_EDGES, LAYERED_EDGES


def oligopoly(slopes, session_rate, intercepts=None):
    """
    Relays r1..rN with path marginal λ_k(r) = a_k + slopes[k]·r, split evenly
    over the two hops.
    """
    intercepts = intercepts or [0.0] * len(slopes)
    names = [f"r{k}" for k in range(1, len(slopes) + 1)]
    edges = [("s", n) for n in names] + [(n, "w") for n in names]
    net = Network.from_edges(edges, "s", "w")
    upper = 2.0 * session_rate
    costs = {}
    for name, a, b in zip(names, intercepts, slopes):
        half = MarginalFn.linear(a / 2.0, b / 2.0, upper)
        costs[(net.node_id("s"), net.node_id(name))] = half
        costs[(net.node_id(name), net.node_id("w"))] = half
    return net, costs


def duopoly():
    """λ_1(r) = r and λ_2(r) = 2r at R_s = 3: optimum (2, 1), cost 3."""
    return oligopoly([1.0, 2.0], 3.0)


def symmetric_linear(n, c=1.0, session_rate=1.0):
    return oligopoly([c] * n, session_rate)


def layered(session_rate=1.0):
    """Two relay layers with distinct slopes on every link."""
    net = Network.from_edges(LAYERED_EDGES, "s", "w")
    upper = 2.0 * session_rate
    slopes = {
        ("s", "a"): 1.0,
        ("s", "b"): 2.0,
        ("a", "c"): 1.0,
        ("a", "d"): 3.0,
        ("b", "c"): 2.0,
        ("b", "d"): 1.0,
        ("c", "w"): 1.0,
        ("d", "w"): 2.0,
    }
    costs = {
        (net.node_id(t), net.node_id(h)): MarginalFn.linear(0.0, b, upper)
        for (t, h), b in slopes.items()
    }
    return net, costs


def zero_flow_chain(session_rate=1.0):
    """
    s-a-w carries everything; the branch s-b-{c,d}-w starts at a marginal
    of 11.5 and stays empty, so b and c are zero-flow relays in a chain.
    """
    net = Network.from_edges(CHAIN_EDGES, "s", "w")
    upper = 2.0 * session_rate
    lines = {
        ("s", "a"): (0.0, 1.0),
        ("a", "w"): (0.0, 1.0),
        ("s", "b"): (10.0, 1.0),
        ("b", "c"): (1.0, 1.0),
        ("b", "d"): (2.0, 1.0),
        ("c", "w"): (0.5, 1.0),
        ("d", "w"): (0.5, 2.0),
    }
    costs = {
        (net.node_id(t), net.node_id(h)): MarginalFn.linear(a, b, upper)
        for (t, h), (a, b) in lines.items()
    }
    return net, costs


def myopic_problem():
    """The six-node general game at its default constants, compiled."""
    # Import here to avoid circular imports
    from src.analysis import generate_example
    from src.scenario import compile_scenario

    return compile_scenario(generate_example("myopic-general"))
