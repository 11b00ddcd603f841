"""
Core engines: lattices, surfaces, flops, projectivity and enumeration
"""
from .picard_lattice import DivisorClass, IntersectionLattice
from .anticanonical_pairs import AnticanonicalPair, BoundarySide, Curve, build_Y1, build_Y2, build_Y4
from .curve_structure import AugmentedCurveStructure, Classification, classify_pair, extract
from .degeneration import (
    CentralFibreState, FlopMove, GluingRecord, apply_type_I, apply_type_II,
    available_type_I, available_type_II, build_YP, build_YT
)
from .flops import TypeIFlop, TypeIIFlop, available_flops
from .projectivity import (
    AmpleCertificate, CombinedOracle, CriterionOracle, LPOracle, Verdict, VerdictCache,
    create_oracle, criterion_P, criterion_T, glue_certificates, lp_feasible
)
from .enumeration import (
    bfs, canonical_triple, enumerate_regular_triples, is_symmetric, iso_class_key,
    triple_equivalent, triple_of
)
from .morifan import FlopGraph, build_flop_graph, cone_census, orbit_length, secondary_fan
from .serialization import emit, parse
from .explorer import (
    FlopExplorer, ExplorerConfig, create_explorer, LoggingProgressReporter,
    BuildResult, EnumerationResult, CensusResult, FanResult, GraphResult, CheckResult,
    VerificationResult
)

__all__ = [
    # Main classes
    'FlopExplorer',
    'ExplorerConfig',
    'create_explorer',
    'LoggingProgressReporter',

    # Surfaces and states
    'DivisorClass',
    'IntersectionLattice',
    'AnticanonicalPair',
    'BoundarySide',
    'Curve',
    'build_Y1',
    'build_Y2',
    'build_Y4',
    'AugmentedCurveStructure',
    'Classification',
    'classify_pair',
    'extract',
    'CentralFibreState',
    'FlopMove',
    'GluingRecord',
    'build_YP',
    'build_YT',

    # Flops
    'TypeIFlop',
    'TypeIIFlop',
    'available_flops',
    'apply_type_I',
    'apply_type_II',
    'available_type_I',
    'available_type_II',

    # Projectivity
    'AmpleCertificate',
    'Verdict',
    'CriterionOracle',
    'LPOracle',
    'CombinedOracle',
    'VerdictCache',
    'create_oracle',
    'criterion_P',
    'criterion_T',
    'glue_certificates',
    'lp_feasible',

    # Enumeration and the Mori fan
    'bfs',
    'iso_class_key',
    'triple_of',
    'triple_equivalent',
    'canonical_triple',
    'enumerate_regular_triples',
    'is_symmetric',
    'FlopGraph',
    'build_flop_graph',
    'cone_census',
    'orbit_length',
    'secondary_fan',

    # Documents and results
    'emit',
    'parse',
    'BuildResult',
    'EnumerationResult',
    'CensusResult',
    'FanResult',
    'GraphResult',
    'CheckResult',
    'VerificationResult',
]
