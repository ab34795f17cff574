"""Command-line surface: run the edge pipelines, inspect encodings."""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .encoders import frqi_encode, intensities_to_angles, neqr_encode, qpie_encode
from .errors import (
    ContractError,
    DegenerateInputError,
    InputError,
    MeasurementError,
    QimedgeError,
    QubitIndexError,
    SizeError,
    ValidationError,
)
from .imageio import load_image, save_edge_map, save_u8
from .postprocess import (
    Threshold,
    compute_threshold,
    detect_edges_modified,
    detect_edges_traditional,
    superimpose,
)
from .qhed import PipelineConfig, ScanDirection, scan_frqi, scan_qpie

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PIPELINE = 3

_INPUT_ERRORS = (InputError, SizeError, ValidationError, DegenerateInputError,
                 QubitIndexError, OSError)
_PIPELINE_ERRORS = (ContractError, MeasurementError)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qimedge",
                                     description="Quantum image encodings and Hadamard edge detection")
    sub = parser.add_subparsers(dest="command", required=True)

    edges = sub.add_parser("edges", help="detect edges and write the maps plus a run manifest")
    edges.add_argument("input", help="PGM/PPM/PNG image")
    edges.add_argument("output", help="output path prefix")
    edges.add_argument("--method", choices=["qpie", "frqi"], default="frqi")
    edges.add_argument("--branch", choices=["max-prob", "forced-0", "forced-1", "sampled"],
                       default="max-prob", help="measurement policy for the frqi method")
    edges.add_argument("--seed", type=int, default=0, help="seed for the sampled branch policy")
    edges.add_argument("--boundary", choices=["clipped", "cyclic"], default="clipped")
    edges.add_argument("--threshold", type=float, default=None,
                       help="override the dynamic threshold with a fixed value")
    edges.add_argument("--first-edge", choices=["per-grid", "per-row"], default="per-grid")
    edges.add_argument("--ancilla", choices=["plus", "paper-literal"], default="plus",
                       help="ancilla start convention on the frqi path")
    edges.add_argument("--compare", action="store_true",
                       help="also write the traditional map and an input|traditional|modified montage")
    edges.add_argument("--pad", choices=["zero", "crop"], default="zero")
    edges.add_argument("--rgb-angle", action="store_true",
                       help="collapse color via base-256 channel packing instead of luminance")
    edges.set_defaults(func=cmd_edges)

    encode = sub.add_parser("encode", help="print statevector amplitudes for an encoding")
    encode.add_argument("encoding", choices=["qpie", "frqi", "neqr"])
    encode.add_argument("input", help="PGM/PPM/PNG image")
    encode.add_argument("--out", default=None, help="write amplitudes to a file instead of stdout")
    encode.add_argument("--nonzero-only", action="store_true",
                        help="skip amplitudes with magnitude below 1e-12")
    encode.add_argument("--pad", choices=["zero", "crop"], default="zero")
    encode.add_argument("--rgb-angle", action="store_true")
    encode.set_defaults(func=cmd_encode)
    return parser


def _montage(img, traditional, modified) -> np.ndarray:
    """input | traditional | modified, separated by mid-gray columns."""
    panels = [
        np.rint(img.pixels * 255.0).astype(np.uint8),
        traditional.bits * np.uint8(255),
        modified.bits * np.uint8(255),
    ]
    sep = np.full((img.side, 2), 128, dtype=np.uint8)
    return np.hstack([panels[0], sep, panels[1], sep, panels[2]])


def cmd_edges(args) -> int:
    img = load_image(args.input, pad=args.pad,
                     color="rgb-angle" if args.rgb_angle else "luminance")
    config = PipelineConfig(method=args.method, branch_policy=args.branch,
                            boundary_mode=args.boundary, seed=args.seed,
                            ancilla=args.ancilla)
    started = time.perf_counter()
    grids = {}
    records = {}
    maps = {}
    for direction in (ScanDirection.HORIZONTAL, ScanDirection.VERTICAL):
        if args.method == "qpie":
            grid, record = scan_qpie(img, direction, args.boundary), None
        else:
            grid, record = scan_frqi(img, direction, config)
        if args.threshold is not None:
            thr = Threshold(args.threshold, grid.n)
        else:
            thr = compute_threshold(grid)
        grids[direction] = (grid, thr)
        records[direction] = record
        maps[direction] = detect_edges_modified(grid, thr, args.first_edge)

    h_map = maps[ScanDirection.HORIZONTAL]
    v_map = maps[ScanDirection.VERTICAL]
    final = superimpose(h_map, v_map)

    outputs = {
        "edges": f"{args.output}.edges.pgm",
        "horizontal": f"{args.output}.h.pgm",
        "vertical": f"{args.output}.v.pgm",
        "manifest": f"{args.output}.manifest.json",
    }
    traditional = None
    if args.compare:
        trad_h = detect_edges_traditional(grids[ScanDirection.HORIZONTAL][0])
        trad_v = detect_edges_traditional(grids[ScanDirection.VERTICAL][0])
        traditional = superimpose(trad_h, trad_v)
        outputs["traditional"] = f"{args.output}.traditional.pgm"
        outputs["montage"] = f"{args.output}.compare.pgm"
    elapsed_ms = (time.perf_counter() - started) * 1000.0

    save_edge_map(final, outputs["edges"])
    save_edge_map(h_map, outputs["horizontal"])
    save_edge_map(v_map, outputs["vertical"])
    if traditional is not None:
        save_edge_map(traditional, outputs["traditional"])
        save_u8(_montage(img, traditional, final), outputs["montage"])

    branch = None
    if args.method == "frqi":
        branch = {"policy": args.branch}
        for direction in (ScanDirection.HORIZONTAL, ScanDirection.VERTICAL):
            rec = records[direction]
            branch[direction.value] = {"outcome": rec.outcome, "probability": rec.probability}
    manifest = {
        "ancilla": args.ancilla,
        "boundary": args.boundary,
        "branch": branch,
        "compare": bool(args.compare),
        "first_edge": args.first_edge,
        "input": args.input,
        "method": args.method,
        "outputs": outputs,
        "pad": args.pad,
        "rgb_angle": bool(args.rgb_angle),
        "seed": args.seed,
        "side": img.side,
        "thresholds": {
            "horizontal": grids[ScanDirection.HORIZONTAL][1].value,
            "vertical": grids[ScanDirection.VERTICAL][1].value,
            "override": args.threshold,
        },
        "timing_ms": round(elapsed_ms, 3),
    }
    with open(outputs["manifest"], "w", encoding="ascii") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return EXIT_OK


def cmd_encode(args) -> int:
    img = load_image(args.input, pad=args.pad,
                     color="rgb-angle" if args.rgb_angle else "luminance")
    if args.encoding == "qpie":
        state = qpie_encode(img)
    elif args.encoding == "frqi":
        state = frqi_encode(intensities_to_angles(img))
    else:
        state = neqr_encode(np.rint(img.pixels * 255.0).astype(np.int64)).state
    m = state.num_qubits
    lines = []
    for idx, amp in enumerate(state.amplitudes):
        if args.nonzero_only and abs(amp) < 1e-12:
            continue
        lines.append(f"{idx} {idx:0{m}b} {amp.real:+.12e} {amp.imag:+.12e}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _PIPELINE_ERRORS as exc:
        print(f"qimedge: pipeline error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    except _INPUT_ERRORS as exc:
        print(f"qimedge: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except QimedgeError as exc:
        print(f"qimedge: error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())
