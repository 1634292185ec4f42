from .state import (CoinPadding,
                    WalkState,
                    Distribution,
                    initial_state,
                    check_state_size,
                    write_distribution_csv,
                    write_trace_csv)
from .engine import (apply_coin,
                     apply_shift,
                     step,
                     evolve,
                     position_distribution,
                     trace)
from . import dense

__all__ = ['CoinPadding',
           'WalkState',
           'Distribution',
           'initial_state',
           'check_state_size',
           'write_distribution_csv',
           'write_trace_csv',
           'apply_coin',
           'apply_shift',
           'step',
           'evolve',
           'position_distribution',
           'trace',
           'dense']
