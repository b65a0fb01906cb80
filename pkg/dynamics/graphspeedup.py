"""
Speedups of shifts of finite type and sofic shifts as graph presentations.

An SFT is given by a vertex-labeled graph (``networkx.DiGraph``, one symbol
per vertex, the "block" node attribute holding it as a Word); a sofic shift
by an edge-labeled ``networkx.MultiDiGraph`` with a "label" edge attribute.
Both are pruned to their essential part, the vertices lying on bi-infinite
paths. The speedup by a jump of radius K and maximum p_max is built on the
M-block recoding with M = 2 max(p_max, K) + 1, following every path of
length p(v) out of each vertex v.
"""
import logging
from dataclasses import dataclass

import networkx as nx
import numpy

from dynamics.exceptions import DegeneratePresentation, InvalidJump, ParseError
from dynamics.speedup import block_language
from dynamics.words import Alphabet, OrbitSegment, Word

logger = logging.getLogger(__name__)


def prune_essential(graph):
    """Copy of ``graph`` without vertices that miss a predecessor or a successor."""
    graph = graph.copy()
    stranded = [v for v in graph if not graph.out_degree(v) or not graph.in_degree(v)]
    while stranded:
        graph.remove_nodes_from(stranded)
        stranded = [v for v in graph if not graph.out_degree(v) or not graph.in_degree(v)]
    return graph


@dataclass(frozen=True)
class SftPresentation:
    alphabet: Alphabet
    graph: nx.DiGraph
    block_length: int = 1

    def __post_init__(self):
        object.__setattr__(self, "graph", prune_essential(self.graph))
        if not len(self.graph):
            raise DegeneratePresentation("presentation has no bi-infinite path")

    def block(self, vertex):
        return self.graph.nodes[vertex]["block"]


@dataclass(frozen=True)
class SoficPresentation:
    alphabet: Alphabet
    graph: nx.MultiDiGraph
    block_length: int = 1

    def __post_init__(self):
        object.__setattr__(self, "graph", prune_essential(self.graph))
        if not len(self.graph):
            raise DegeneratePresentation("presentation has no bi-infinite path")


def one_step_sft(alphabet, edges):
    """The SFT whose vertices are the symbols of ``alphabet``."""
    graph = nx.DiGraph()
    for i, symbol in enumerate(alphabet.symbols):
        graph.add_node(symbol, block=Word(alphabet, bytes([i])))
    graph.add_edges_from(edges)
    return SftPresentation(alphabet, graph)


def _paths(graph, start, length):
    """Vertex paths with ``length`` edges out of ``start``."""
    paths = [(start,)]
    for _ in range(length):
        paths = [path + (nxt,) for path in paths for nxt in sorted(graph.successors(path[-1]))]
    return paths


def block_presentation(sft, M):
    """Vertices are the admissible M-blocks, edges the overlapping pairs."""
    if M < 1:
        raise DegeneratePresentation(f"block length must be positive, got {M}")
    if sft.block_length != 1:
        raise DegeneratePresentation("block recoding needs a one-step presentation")
    graph = nx.DiGraph()
    for start in sorted(sft.graph):
        for path in _paths(sft.graph, start, M - 1):
            word = Word(sft.alphabet, b"".join(sft.block(v).letters for v in path))
            graph.add_node(word.label, block=word)
    for label, block in list(graph.nodes(data="block")):
        for nxt in sorted(sft.graph.successors(block.symbols[-1])):
            following = Word(sft.alphabet, block.letters[1:] + sft.block(nxt).letters)
            graph.add_edge(label, following.label)
    if not len(graph):
        raise DegeneratePresentation(f"no admissible block of length {M}")
    return SftPresentation(sft.alphabet, graph, M)


def speedup_block_length(jump):
    return 2 * max(jump.p_max, jump.radius) + 1


def _centre_jump(jump, letters):
    half = (len(letters) - 1) // 2
    if half < jump.radius:
        raise InvalidJump(f"block of length {len(letters)} does not cover jump radius {jump.radius}")
    return jump.value(letters, half)


def speedup_sft(sft, jump):
    """One edge v -> w per path of length p(v) from v, landing on block w.

    Parallel edges landing on the same block collapse into one.
    """
    M = speedup_block_length(jump)
    blocks = block_presentation(sft, M)
    graph = nx.DiGraph()
    graph.add_nodes_from(blocks.graph.nodes(data=True))
    for vertex, block in blocks.graph.nodes(data="block"):
        step = _centre_jump(jump, block.letters)
        for path in _paths(blocks.graph, vertex, step):
            graph.add_edge(vertex, path[-1])
    logger.debug("speedup SFT: M=%d, %d vertices, %d edges", M, graph.number_of_nodes(), graph.number_of_edges())
    return SftPresentation(sft.alphabet, graph, M)


def _edge_paths(graph, start, length):
    """Edge paths (u, v, key) with ``length`` edges out of vertex ``start``."""
    paths = [((), start)]
    for _ in range(length):
        paths = [
            (path + ((end, nxt, key),), nxt)
            for path, end in paths
            for _, nxt, key in sorted(graph.out_edges(end, keys=True), key=repr)
        ]
    return [path for path, _ in paths]


def speedup_sofic(sofic, jump):
    """Vertices are M-edge paths; the edge to the path p steps later is
    labeled by the M-block read along the source path."""
    M = speedup_block_length(jump)
    alphabet = sofic.alphabet
    source = sofic.graph

    def word_of(path):
        return Word(alphabet, bytes(alphabet.index(source.edges[edge]["label"]) for edge in path))

    vertices = [path for start in sorted(source, key=repr) for path in _edge_paths(source, start, M)]
    if not vertices:
        raise DegeneratePresentation(f"no admissible path of length {M}")
    names = {path: f"p{i}" for i, path in enumerate(vertices)}
    graph = nx.MultiDiGraph()
    for path in vertices:
        graph.add_node(names[path], block=word_of(path))
    for path in vertices:
        block = word_of(path)
        step = _centre_jump(jump, block.letters)
        for extension in _edge_paths(source, path[-1][1], step):
            graph.add_edge(names[path], names[(path + extension)[step:]], label=block.label)
    logger.debug("speedup sofic: M=%d, %d vertices, %d edges", M, graph.number_of_nodes(), graph.number_of_edges())
    return SoficPresentation(alphabet, graph, M)


def sft_as_sofic(sft):
    """Edge-labeled view: u -> v carries the symbol of u."""
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(sft.graph)
    for u, v in sft.graph.edges:
        graph.add_edge(u, v, label=sft.block(u).label)
    return SoficPresentation(sft.alphabet, graph, sft.block_length)


def _label_sequences(presentation, n):
    """Label tuples of length n read along paths; vertex names for an SFT,
    edge labels for a sofic presentation."""
    graph = presentation.graph
    if isinstance(presentation, SftPresentation):
        frontier = {((v,), v) for v in graph}
        for _ in range(n - 1):
            frontier = {(labels + (nxt,), nxt) for labels, v in frontier for nxt in graph.successors(v)}
    else:
        frontier = {((), v) for v in graph}
        for _ in range(n):
            frontier = {(labels + (label,), nxt) for labels, v in frontier for _, nxt, label in graph.out_edges(v, data="label")}
    return {labels for labels, _ in frontier}


def language_of_presentation(presentation, n):
    """Label words of length n along paths, as tuples of labels.

    Tuples, not Words: block recodings may have more than 256 vertices.
    """
    if n < 1:
        raise DegeneratePresentation(f"word length must be positive, got {n}")
    return _label_sequences(presentation, n)


def oracle_language(presentation, jump, n):
    """Brute force: S-words of length n recoded by centered M-blocks, read
    off every admissible word of a base presentation long enough to hold
    them."""
    M = speedup_block_length(jump)
    length = M + (n - 1) * jump.p_max
    found = set()
    alphabet = presentation.alphabet
    for labels in language_of_presentation(presentation, length):
        segment = OrbitSegment(Word(alphabet, bytes(alphabet.index(s) for s in labels)))
        found |= block_language(segment, jump, n, M)
    return found


def random_walk(presentation, length, seed=0):
    """Orbit segment read along a seeded random path."""
    rng = numpy.random.default_rng(seed)
    graph = presentation.graph
    vertex = sorted(graph, key=repr)[rng.integers(len(graph))]
    letters = bytearray()
    sofic = isinstance(presentation, SoficPresentation)
    while len(letters) < length:
        if sofic:
            edges = sorted(graph.out_edges(vertex, data="label"), key=repr)
            _, vertex, label = edges[rng.integers(len(edges))]
            letters.append(presentation.alphabet.index(label))
        else:
            letters.append(presentation.block(vertex).letters[0])
            successors = sorted(graph.successors(vertex), key=repr)
            vertex = successors[rng.integers(len(successors))]
    return OrbitSegment(Word(presentation.alphabet, bytes(letters)))


def to_dot(presentation):
    """Graphviz source for the presentation."""
    graph = nx.MultiDiGraph() if isinstance(presentation, SoficPresentation) else nx.DiGraph()
    for vertex in sorted(presentation.graph, key=repr):
        graph.add_node(str(vertex), label=f'"{vertex}"')
    for u, v, label in sorted(presentation.graph.edges(data="label"), key=repr):
        attrs = {"label": f'"{label}"'} if label is not None else {}
        graph.add_edge(str(u), str(v), **attrs)
    return nx.nx_pydot.to_pydot(graph).to_string()


def parse_presentation(text):
    """``vertex <label>`` and ``edge <from> <to> [label]`` lines; edges with
    labels make a sofic presentation, edges without an SFT."""
    vertices, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        if parts[0] == "vertex" and len(parts) == 2:
            vertices.append(parts[1])
        elif parts[0] == "edge" and len(parts) in (3, 4):
            edges.append(tuple(parts[1:]))
        else:
            raise ParseError(f"line {lineno}: expected 'vertex <label>' or 'edge <from> <to> [label]', got {raw!r}")
    if not edges:
        raise ParseError("presentation has no edges")
    labeled = {len(edge) == 3 for edge in edges}
    if len(labeled) != 1:
        raise ParseError("either every edge carries a label or none does")
    if labeled.pop():
        alphabet = Alphabet(tuple(sorted({label for _, _, label in edges})))
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(vertices)
        for u, v, label in edges:
            graph.add_edge(u, v, label=label)
        return SoficPresentation(alphabet, graph)
    symbols = sorted(set(vertices) | {v for edge in edges for v in edge})
    return one_step_sft(Alphabet(tuple(symbols)), edges)


def format_presentation(presentation):
    lines = [f"vertex {v}" for v in sorted(presentation.graph, key=str)]
    for u, v, label in sorted(presentation.graph.edges(data="label"), key=lambda e: tuple(map(str, e))):
        lines.append(f"edge {u} {v}" + ("" if label is None else f" {label}"))
    return "\n".join(lines) + "\n"
