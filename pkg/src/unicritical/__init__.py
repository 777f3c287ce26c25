"""Connectivity and limit geometry of filled Julia sets of z^n + c with |c| = 1."""

from .exact_angle import (
    Classification,
    ExceptionalWitness,
    RationalAngle,
    Tag,
    classify_exact,
    exceptional_powers,
    fractional_rotation,
    hexagon_points,
    is_exceptional,
    is_exceptional_angle,
    reduce,
)
from .dynamics import (
    OrbitResult,
    TrapReport,
    eval_map,
    orbit_bounded,
    orbit_bounded_batch,
    second_iterate_modulus,
    second_iterate_value,
    trap_margin,
    unit_circle_param,
    verify_trap,
)
from .geometry import (
    PointCloud,
    circle_cloud,
    directed_hausdorff,
    directed_hausdorff_naive,
    disk_cloud,
    hausdorff,
    hausdorff_to_circle,
    hausdorff_to_disk,
    hexagon_cloud,
    rotation_symmetry_defect,
)
from .raster import RasterGrid, Window, boundary_extract, filled_julia_grid, multibrot_log_slice
from .analysis import (
    EquidistStats,
    PartitionReport,
    RasterParams,
    SweepRow,
    convergence_sweep,
    equidistribution_stats,
    partition_subsequences,
    period_of_classification,
    star_cells,
    star_table,
)

__version__ = "0.1.0"
