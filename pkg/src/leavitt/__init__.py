"""Symbolic workbench for Leavitt path algebras of finite directed
multigraphs: graph surgery, the Cuntz-Krieger normal-form engine, the
five simple-module constructions with annihilators, the primitive
ideal table, and the finite-presentation machinery.
"""

from .errors import (
    AlgebraError,
    DanglingEndpoint,
    DatumEscapesH,
    DisallowedPolynomial,
    DuplicateName,
    ExprError,
    ExprSyntaxError,
    FieldError,
    FieldMismatch,
    GraphError,
    GraphMismatch,
    HasEntry,
    HomViolation,
    InfiniteCount,
    IrreducibilityUndecided,
    IsASink,
    LazyDepthExceeded,
    LeavittError,
    MismatchedDescriptor,
    ModuleError,
    NoIrreduciblePolynomial,
    NoWitness,
    NotACycle,
    NotALoop,
    NotAPath,
    NotASink,
    NotASource,
    NotAdmissible,
    NotBothBasedAtV,
    NotClosed,
    NotExclusive,
    NotHereditary,
    NotHereditarySaturated,
    NotInvertible,
    NotMaximal,
    NotPrimitivePeriod,
    ReduciblePolynomial,
    SearchBoundExceeded,
    SpectrumError,
    StructureError,
    TooLarge,
    TooLargeForExhaustive,
    UndecidableLazyTail,
    UnknownEdge,
    UnknownSymbol,
    UnknownVertex,
    WrongEmitterShape,
    ZeroMultiplicity,
)
from .graph import (
    admissible_pair,
    AdmissiblePair,
    ancestors_of,
    breaking_vertices,
    build_graph,
    check_hereditary_saturated,
    count_paths,
    Cycle,
    cycle_base,
    cycle_based_at,
    cycle_has_exit,
    cycle_to_loop,
    cycle_vertices,
    CycleInfo,
    descendants_of,
    detect_period,
    Edge,
    EdgeClass,
    enumerate_cycles,
    enumerate_hereditary_saturated,
    GeneratorTable,
    Graph,
    graph_from_file,
    growing_run_stream,
    growth_class,
    GrowthClass,
    has_condition_L,
    is_downward_directed,
    is_exclusive,
    is_hereditary,
    is_omega,
    is_saturated,
    LazyPath,
    make_cycle,
    OMEGA,
    one_cycle_per_vertex,
    Path,
    path_prefix,
    path_suffix,
    path_vertices_of_upp,
    period_of_upp,
    quotient_graph,
    reaches,
    restricted_graph,
    saturate,
    sorted_vertices,
    source_eliminate,
    tail_complement_of_upp,
    tail_equivalent,
    to_dot,
    ultimately_periodic,
    UltimatelyPeriodicPath,
    upp_ends_in_cycle,
    validate_graph,
    vertex_tail_complement,
    VertexKind,
)
from .fields import (
    check_defining_poly,
    Field,
    GFElement,
    is_irreducible,
    LaurentPoly,
    one_minus_x,
    parse_field,
    parse_laurent,
    PrimeField,
    QQ,
    QuotientElement,
    QuotientField,
    RationalField,
)
from .algebra import (
    corner_embedding,
    edge_element,
    fullness_certificate_cycle,
    fullness_certificate_source,
    FullnessCertificate,
    GeneratorImages,
    ghost_element,
    HomReport,
    identity_element,
    images_from_table,
    in_graded_ideal,
    LpaElement,
    Monomial,
    monomial_element,
    normal_form,
    path_element,
    poly_at_cycle,
    quotient_hom,
    special_edges,
    verify_hom,
    vertex_element,
    vertex_minus_escapes,
    zero_element,
)
from .modules import (
    act,
    annihilator,
    AnnihilatorDescriptor,
    are_isomorphic,
    basis_upto,
    breaking_emitter_module,
    ChenKind,
    ChenModule,
    cyclic_generation_report,
    descriptor_generators,
    format_datum,
    format_module_element,
    graded_descriptor,
    induce_from_restriction,
    infinite_path_module,
    LazyDatum,
    make_chen,
    ModuleElement,
    non_graded_descriptor,
    quotient_emitter_module,
    resolve_stream,
    sink_module,
    twisted_module,
    verify_annihilator,
)
from .spectrum import (
    cofinal_path,
    descriptor_ideal,
    enumerate_prim_ideals,
    instantiate,
    is_primitive_algebra,
    PrimitiveIdealDescriptor,
    realize_chen,
    SinkResult,
    spectrum_chen_bijection_report,
    SpectrumReport,
    SpectrumRow,
)
from .structure import (
    build_counterexample_module,
    build_rotate_module,
    CounterexamplePackage,
    distinguish_from_cycle_modules,
    DistinguishEntry,
    DistinguishReport,
    find_double_cycle_vertex,
    FinDimModule,
    is_simple_findim,
    is_V_finitely_presented,
    main_theorem_report,
    MainTheoremReport,
    MoritaStep,
    presentation_certificate,
    PresentationCertificate,
    RecursionIdentity,
    reduce_pipeline,
    ReportItem,
    UNKNOWN,
)
from .expressions import format_element, format_monomial, parse_expression
from .fixtures import FIXTURE_NAMES, all_fixtures, fixture_graph
