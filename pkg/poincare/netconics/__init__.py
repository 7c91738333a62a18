from .discriminant import (
    DiscriminantClass,
    NetClassification,
    TernaryCubic,
    classify,
    discriminant,
    discriminant_classify,
    linear_factors,
    net_classification,
)
from .net import ConicNet, find_square_generators, quadratic_class, relation_net

__all__ = [
    "ConicNet",
    "DiscriminantClass",
    "NetClassification",
    "TernaryCubic",
    "classify",
    "discriminant",
    "discriminant_classify",
    "find_square_generators",
    "linear_factors",
    "net_classification",
    "quadratic_class",
    "relation_net",
]
