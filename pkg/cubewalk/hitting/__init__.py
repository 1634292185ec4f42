from .search import (HittingRecord,
                     one_shot_probability,
                     default_window,
                     find_hitting_time,
                     probability_curve)
from .sweep import (SweepRow,
                    SweepReport,
                    ConjectureVerdict,
                    family_sweep_async,
                    family_sweep,
                    degree_sweep_async,
                    degree_sweep,
                    conjecture_check)

__all__ = ['HittingRecord',
           'one_shot_probability',
           'default_window',
           'find_hitting_time',
           'probability_curve',
           'SweepRow',
           'SweepReport',
           'ConjectureVerdict',
           'family_sweep_async',
           'family_sweep',
           'degree_sweep_async',
           'degree_sweep',
           'conjecture_check']
