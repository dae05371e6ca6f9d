"""Independent certificate checking against materialized snapshots.

The checker never touches construction code: it replays a landscape
purely from the arrays stored in a snapshot and re-runs the clause
verification.  Shared surface is limited to type definitions (words,
windows, pattern balls, certificates).
"""

from __future__ import annotations

from .groups import GroupSpec, Window, ball
from .paradox import (CertificateReport, DoublingCertificate,
                      certificate_from_dict, verify_certificate)
from .snapshots import SNAPSHOT_SCHEMA


class SnapshotLandscape:
    """A landscape replayed from stored per-vertex heights and labels.

    Only window vertices can be queried, and only up to the stored
    prefix length; anything past that is a hard error rather than a
    silent recomputation.
    """

    provenance = "snapshot"

    def __init__(self, window: Window, heights, labels, prefix_len: int):
        self.spec = window.spec
        self.window = window
        self.prefix_len = prefix_len
        self._heights = {
            w: h for w, h in zip(window.vertices, heights)
        }
        self._labels = {
            w: bits for w, bits in zip(window.vertices, labels)
        }

    def height(self, word) -> int:
        try:
            return self._heights[word]
        except KeyError:
            raise ValueError(f"word {word!r} outside the snapshot window")

    def label(self, word, s: int) -> str:
        if s > self.prefix_len:
            raise ValueError(
                f"prefix {s} exceeds snapshot prefix length "
                f"{self.prefix_len}"
            )
        try:
            return self._labels[word][:s]
        except KeyError:
            raise ValueError(f"word {word!r} outside the snapshot window")


def load_snapshot(obj: dict) -> SnapshotLandscape:
    if obj.get("schema") != SNAPSHOT_SCHEMA:
        raise ValueError(f"unsupported snapshot schema: {obj.get('schema')!r}")
    spec = GroupSpec.from_dict(obj["windowRef"]["group"])
    window = ball(spec, int(obj["windowRef"]["radius"]))
    return SnapshotLandscape(
        window, obj["heights"], obj["labels"], int(obj["labelPrefixLen"])
    )


def check_certificate_dict(snapshot_obj: dict, cert_obj: dict
                           ) -> CertificateReport:
    """Re-verify one serialized certificate against a snapshot.

    Raises ``ValueError`` on schema or window mismatch; verification
    failures come back as a failing report, not an exception.
    """
    z = load_snapshot(snapshot_obj)
    cert = certificate_from_dict(cert_obj, z.spec)
    if cert.window_radius != z.window.radius:
        raise ValueError(
            f"certificate radius {cert.window_radius} does not match "
            f"snapshot radius {z.window.radius}"
        )
    if cert.prefix_len > z.prefix_len:
        raise ValueError(
            f"certificate needs label prefix {cert.prefix_len}, snapshot "
            f"stores only {z.prefix_len}"
        )
    return verify_certificate(z, cert, z.window)
