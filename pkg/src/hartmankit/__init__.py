"""Phase-time tunneling delays for evanescent barriers.

Quantum square barriers, frustrated total internal reflection gaps,
undersized waveguide sections and dielectric mirrors share one scattering
interface (:mod:`hartmankit.barriers`); delays are extracted from the
transmission phase (:mod:`hartmankit.phasetime`), checked against packet
simulations (:mod:`hartmankit.packets`) and compared with the universal
``T = 1/nu`` estimate and its barrier-specific corrections
(:mod:`hartmankit.universal`).
"""

__version__ = "0.1.0"

from .barriers import (
    DielectricStack,
    FrequencyGrid,
    FtirGap,
    RectangularQuantumBarrier,
    ScatteringResponse,
    UndersizedWaveguideBarrier,
    ftir_amplitudes,
    quantum_amplitudes,
    quarter_wave_stack,
    scatter,
    stack_amplitudes,
    waveguide_amplitudes,
)
from .errors import HartmanError
from .kernels import BACKEND
from .phasetime import goos_haenchen_shift, group_delay, hartman_scan, tunneling_report, unwrap_phase
from .universal import esposito_ftir, esposito_quantum, particle_universal_time, universal_time
