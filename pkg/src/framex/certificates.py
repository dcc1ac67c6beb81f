"""Line-oriented certificate files: a header with the graph hash and the
start/end fingerprints, then one move per line (`BB i j e f` / `EB i e`),
streamable for replay."""

from __future__ import annotations

from .bitset import ids_of, mask_of
from .errors import CertificateError
from .exchange import ExchangeCertificate, Move, sequence_fingerprint

HEADER = "# framex certificate v1"


def serialize(cert: ExchangeCertificate) -> str:
    lines = [HEADER, f"graph {cert.graph_hash}", f"k {len(cert.start)}"]
    if cert.anchor is not None:
        lines.append(f"anchor {cert.anchor}")
    if cert.leftover_start is not None:
        lines.append(f"leftover {cert.leftover_start}")
    lines.append("start " + "|".join(",".join(map(str, ids_of(b))) for b in cert.start))
    lines.append(f"startfp {cert.start_fingerprint}")
    lines.append(f"endfp {cert.end_fingerprint}")
    lines.extend(mv.line() for mv in cert.moves)
    return "\n".join(lines) + "\n"


def parse(text: str) -> ExchangeCertificate:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != HEADER:
        raise CertificateError("missing certificate header")
    fields: dict[str, str] = {}
    moves: list[Move] = []
    for ln in lines[1:]:
        tok = ln.split()
        if tok[0] in ("graph", "k", "anchor", "leftover", "start", "startfp", "endfp"):
            fields[tok[0]] = ln[len(tok[0]) + 1 :]
        elif tok[0] == "BB":
            if len(tok) != 5:
                raise CertificateError(f"malformed move line: {ln!r}")
            moves.append(Move("BB", int(tok[1]), int(tok[2]), int(tok[3]), int(tok[4])))
        elif tok[0] == "EB":
            if len(tok) != 3:
                raise CertificateError(f"malformed move line: {ln!r}")
            moves.append(Move("EB", int(tok[1]), e=int(tok[2])))
        else:
            raise CertificateError(f"unknown line: {ln!r}")
    for key in ("graph", "k", "start", "startfp", "endfp"):
        if key not in fields:
            raise CertificateError(f"missing header field {key!r}")
    start = tuple(
        mask_of(int(x) for x in part.split(",") if x != "")
        for part in fields["start"].split("|")
    )
    if len(start) != int(fields["k"]):
        raise CertificateError("header k does not match the start sequence")
    leftover = int(fields["leftover"]) if "leftover" in fields else None
    anchor = int(fields["anchor"]) if "anchor" in fields else None
    cert = ExchangeCertificate(
        fields["graph"], start, tuple(moves), fields["endfp"], leftover, anchor
    )
    if sequence_fingerprint(start, leftover) != fields["startfp"]:
        raise CertificateError("start fingerprint mismatch")
    return cert
