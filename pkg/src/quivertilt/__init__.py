"""Exact representation theory of quivers: knitting, tilting and the tilted category."""

from .linalg import GF, QQ, Mat, ZMat, default_field, field_from_name
from .quiver import A_INF, A_INFINF, D_INF, FAMILIES, Quiver, WindowTooSmall, classify, quiver, truncate
from .rep import ExtSpace, HomSpace, Rep, RepMap, ShortExact, ext1_dim, hom_dim
from .modules import decompose, injective, is_indecomposable, projective, simple
from .ar import all_indecomposables, ar_sequence, knit_preinjective, knit_preprojective, tau, tau_inv
from .tilting import bongartz_completion, is_tilting, random_section, verify_section
from .tilted import build_tilted, global_dimension, k0_matrix, verify_bb
from .mesh import MeshIdeal, TranslationQuiver, build_znq, rho_relations, sectional_nonzero

__version__ = "0.1.0"
