"""Coded caching and interference-aligned delivery for partially connected
fog radio access networks: topology construction, MDS placement, fronthaul
message generation, alignment-group verification, message-level decoding,
and exact delivery-time analytics."""

from .alignment import AlignmentGroup, ChannelSymbol, build_groups, build_groups_greedy, verify_group_cover
from .edge_decode import DeliveryReport, decode_user, run_end_to_end
from .errors import (
    CacheMismatch,
    IncompatiblePair,
    IndexOutOfRange,
    InsufficientChunks,
    InvalidConnectivity,
    MissingMessage,
    NonIntegerT,
    NotRelevant,
    OutOfRange,
    SchemeError,
    SizeError,
    UnboundedNdt,
    UnsupportedRegime,
)
from .fronthaul import (
    DemandVector,
    FronthaulMessage,
    build_fronthaul,
    fronthaul_load,
    fronthaul_ndt,
)
from .ia_verify import (
    SubspaceLabel,
    dof_per_user,
    numeric_rank_spotcheck,
    received_label,
    subspace_census,
    verify_alignment_containment,
)
from .interference import InterferenceMatrix, desired_messages, interference_matrix
from .mds import mds_decode, mds_encode_file
from .ndt import NdtResult, compare_connectivity, ndt_point, ndt_sweep
from .placement import (
    CacheContents,
    FileLibrary,
    PieceId,
    PiecePayload,
    Placement,
    build_placement,
    place_caches,
    subpacketize,
)
from .topology import NetworkParams, Topology, build_topology, index_of

__version__ = "0.1.0"
