from grnevo.utils.seeding import derive_seed, stream_seeds
from grnevo.utils.timing import PhaseTimer

__all__ = ["derive_seed", "stream_seeds", "PhaseTimer"]
