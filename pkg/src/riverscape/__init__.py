"""Window-scale landscapes on Cayley graphs: proper Cantor labelings,
height functions with certified axioms, witness maps with defect bounds,
local sets, and matching-based doubling certificates."""

from .groups import (BudgetExceededError, FreeGroup, GroupSpec, IntegerGroup,
                     Window, ball, bfs_distances)
from .labels import (GreedyColoring, ProperLabelRule, color_graph_power,
                     interleave, project_even, project_odd, separation_index)
from .landscapes import (AnchorSet, AxiomReport, ComponentReport,
                         FractalLandscape, LandscapeRule, RiverLandscape,
                         StructureConstants, TernaryLandscape, components_leq,
                         double_word, fractal_landscape, is_ternary,
                         river_landscape, ternary_height, undouble_word,
                         verify_axioms)
from .paradox import (ChannelAllocator, DoublingCertificate, DoublingSearch,
                      GTGraph, PaddedLandscape, PatternScanCache,
                      PipelineResult, RelabeledLandscape, build_GT,
                      canonical_target_order, certificate_from_dict,
                      cheeger_estimate, covering_radius, extract_pieces,
                      find_doubling, paradoxicalize_sequence, relabel,
                      trivial_certificate, verify_certificate)
from .patterns import (LocalSetSpec, PatternBall, PatternReport,
                       center_height_local_set, classify_patterns,
                       observed_patterns, offset_ball, realize, theta)
from .snapshots import (bundle_pipeline, dump_json, load_json,
                        snapshot_landscape)
from .witness import (CodeBlock, CodeBudgetError, CodeFormatError,
                      block_subset, decode_witness, defect, defect_bound,
                      encode_blocks, encode_witness, kappa, nearest_river,
                      parse_code, reference_radius, subset_from_index,
                      subset_index, tree_witness_path, witness_subset_index)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
