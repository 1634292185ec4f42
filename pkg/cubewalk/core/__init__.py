from events import Events  # type: ignore
from cubewalk.core import types

#: Signal hub. Long running operations announce progress here, e.g. ``msgrouter.on_sweep_row(record)``.
msgrouter = Events()

from .graph import (GeneratingSet,
                    CubelikeGraph,
                    coin_width,
                    make_graph,
                    hypercube,
                    augmented_cube,
                    complete_graph,
                    random_cubelike,
                    family_graph,
                    FAMILIES,
                    target_vertex,
                    neighbor,
                    b_sequence,
                    parse_generating_set,
                    load_generating_set,
                    format_generating_set)

__all__ = ['msgrouter',
           'types',
           'GeneratingSet',
           'CubelikeGraph',
           'coin_width',
           'make_graph',
           'hypercube',
           'augmented_cube',
           'complete_graph',
           'random_cubelike',
           'family_graph',
           'FAMILIES',
           'target_vertex',
           'neighbor',
           'b_sequence',
           'parse_generating_set',
           'load_generating_set',
           'format_generating_set']
