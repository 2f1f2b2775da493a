from compop.transference.maps import (
    DiscSelfMap,
    TransferredSymbol,
    disc_composition_matrix,
    map_i,
    mobius_t,
    transfer_symbol,
)
from compop.transference.verify import (
    disc_approximation_numbers,
    transfer_gram,
    transferred_approximation_numbers,
    verify_transfer_inequality,
)

__all__ = [
    "DiscSelfMap",
    "TransferredSymbol",
    "disc_approximation_numbers",
    "disc_composition_matrix",
    "map_i",
    "mobius_t",
    "transfer_gram",
    "transfer_symbol",
    "transferred_approximation_numbers",
    "verify_transfer_inequality",
]
