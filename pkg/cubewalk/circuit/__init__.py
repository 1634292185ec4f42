from .gates import (GateKind,
                    Gate,
                    GateProgram,
                    GateCounts,
                    gate_counts)
from .compiler import (CoinStrategy,
                       coin_wires,
                       prepare_coin_state,
                       compile_coin,
                       compile_shift,
                       compile_step,
                       compile_walk)
from .executor import (execute_program,
                       program_matrix,
                       ancilla_zero_probability,
                       to_walk_state,
                       EquivalenceReport,
                       verify_equivalence,
                       verify_walk)
from .qasm import (McxLowering,
                   expand_controlled_rotations,
                   lower_mcx_ancilla_ladder,
                   emit_qasm,
                   parse_qasm)

__all__ = ['GateKind',
           'Gate',
           'GateProgram',
           'GateCounts',
           'gate_counts',
           'CoinStrategy',
           'coin_wires',
           'prepare_coin_state',
           'compile_coin',
           'compile_shift',
           'compile_step',
           'compile_walk',
           'execute_program',
           'program_matrix',
           'ancilla_zero_probability',
           'to_walk_state',
           'EquivalenceReport',
           'verify_equivalence',
           'verify_walk',
           'McxLowering',
           'expand_controlled_rotations',
           'lower_mcx_ancilla_ladder',
           'emit_qasm',
           'parse_qasm']
