"""Matrix product states and operators."""

from app.tn.canonical import (
    canonicalize,
    chain_add,
    compress,
    difference_norm,
    inner,
    move_center,
    norm,
    reverse_sites,
    schmidt_spectrum_at,
    truncate_bond,
)
from app.tn.chain import CanonicalForm, Mpo, Mps, TensorChain
from app.tn.convert import identity_mpo, mpo_to_dense, mps_to_vector, product_mps, random_mps, vector_to_mps
from app.tn.zipup import LayerMerge, apply_mpo_zipup, zipup_merge_layers

__all__ = [
    "CanonicalForm",
    "LayerMerge",
    "Mpo",
    "Mps",
    "TensorChain",
    "apply_mpo_zipup",
    "canonicalize",
    "chain_add",
    "compress",
    "difference_norm",
    "identity_mpo",
    "inner",
    "move_center",
    "mpo_to_dense",
    "mps_to_vector",
    "norm",
    "product_mps",
    "random_mps",
    "reverse_sites",
    "schmidt_spectrum_at",
    "truncate_bond",
    "vector_to_mps",
    "zipup_merge_layers",
]
