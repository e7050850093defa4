"""Builtin VOA families, tensor products and spec files."""

from coinvariants.registry.affine import affine_sl2
from coinvariants.registry.io import load_pointed, load_spec, save_pointed, save_spec
from coinvariants.registry.lattice import root_lattice
from coinvariants.registry.pointed import (
    PointedData,
    cyclic_group,
    holomorphic,
    pointed,
    pointed_data_from_spec,
    product_group,
)
from coinvariants.registry.selectors import resolve, resolve_pointed
from coinvariants.registry.tensor import tensor
from coinvariants.registry.virasoro import (
    boundary_fusion_closed_form,
    max_weight_module,
    min_weight_module,
    virasoro,
)

__all__ = [
    "PointedData",
    "affine_sl2",
    "boundary_fusion_closed_form",
    "cyclic_group",
    "holomorphic",
    "load_pointed",
    "load_spec",
    "max_weight_module",
    "min_weight_module",
    "pointed",
    "pointed_data_from_spec",
    "product_group",
    "resolve",
    "resolve_pointed",
    "root_lattice",
    "save_pointed",
    "save_spec",
    "tensor",
    "virasoro",
]
