"""Command line entry point.

Exit status is 0 on success, 2 when a scenario or argument fails
validation, and 1 for anything else (missing files, empty noise
subspace, ...).
"""
from __future__ import annotations

import argparse
import sys

from .analysis import MethodSpec, compare_methods
from .errors import InvalidArgument, ScenarioError
from .forward import synthesize
from .imaging import MUSIC_CAP, filter_map, kirchhoff_map, music_map
from .scenario_io import parse_scenario, preset_names, preset_text
from .spectral import DEFAULT_TAU
from .writers import read_archive, write_archive, write_map, write_pgm, write_report


def _load(args):
    if getattr(args, "archive", None):
        scenario, data = read_archive(args.archive)
    else:
        if not args.scenario:
            raise InvalidArgument("either --scenario or --archive is required")
        scenario, data = parse_scenario(args.scenario), None
    if args.seed is not None:
        scenario = scenario.with_(seed=args.seed)
    return scenario, data


def cmd_synthesize(args):
    scenario, _ = _load(args)
    msrs = synthesize(scenario, noiseless=args.noiseless)
    out = write_archive(msrs, scenario, args.out)
    print(f"wrote {len(msrs)} matrices of shape {msrs[0].shape} to {out} ({msrs[0].provenance})")


def _method_defaults(scenario, args):
    method = args.method or scenario.method.get("name", "filter")
    params = dict(scenario.method.get("params", {})) if scenario.method.get("name") == method else {}
    if args.freq_count is not None:
        params["freq_count"] = args.freq_count
    if args.freq_index is not None:
        params["freq_index"] = args.freq_index
    if args.tau is not None:
        params["tau"] = args.tau
    return method, params


def cmd_image(args):
    scenario, data = _load(args)
    if data is None:
        data = synthesize(scenario)
    method, params = _method_defaults(scenario, args)
    tau = params.get("tau", DEFAULT_TAU)
    if method == "filter":
        image = filter_map(scenario, params.get("freq_count"), data=data, tau=tau,
                           cap=params.get("cap"), workers=args.workers)
    elif method == "music":
        image = music_map(scenario, params.get("freq_index", 0), data=data, tau=tau,
                          cap=params.get("cap", MUSIC_CAP), workers=args.workers)
    elif method == "kirchhoff":
        image = kirchhoff_map(scenario, params.get("freq_index", 0), data=data, workers=args.workers)
    else:
        raise InvalidArgument(f"unknown method {method!r}")
    csv_path, meta_path = write_map(image, args.out, scenario)
    print(f"wrote {image.tag} map ({image.grid.size} points) to {csv_path} and {meta_path}")
    if args.preview_pgm:
        print(f"wrote preview {write_pgm(image, args.preview_pgm)}")


def _seeds(args):
    start = 0 if args.seed is None else args.seed
    return list(range(start, start + args.seeds))


def cmd_report(args):
    scenario = parse_scenario(args.scenario)
    tau = DEFAULT_TAU if args.tau is None else args.tau
    tokens = [t for m in (args.method or []) for t in m.split(",") if t]
    if not tokens:
        tokens = [f"filter:{len(scenario.frequencies)}", "filter:1", "kirchhoff:0", "music:0"]
    specs = [MethodSpec.parse(t, tau) for t in tokens]
    table = compare_methods(scenario, specs, _seeds(args), workers=args.workers)
    write_report(table, args.out)
    print(f"wrote {len(table.rows)} rows to {args.out}")
    print("method                 mean_error   std")
    for name, (mean, std) in table.summary().items():
        print(f"{name:<22} {mean:10.4f} {std:8.4f}")


def cmd_presets(args):
    if args.name:
        sys.stdout.write(preset_text(args.name))
    else:
        print("\n".join(preset_names()))


def cmd_validate(args):
    s = parse_scenario(args.scenario)
    print(f"ok: {s.name or args.scenario}: {len(s.scatterers)} inclusions, "
          f"{len(s.obs)}x{len(s.inc)} directions, {len(s.frequencies)} frequencies")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="halfspace-msr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        p.add_argument("--scenario", help="scenario JSON file or preset name")
        p.add_argument("--seed", type=int, help="override the scenario noise seed")
        p.add_argument("--workers", type=int, default=1)
        if out:
            p.add_argument("--out", required=True)

    p = sub.add_parser("synthesize", help="write an MSR archive for every scenario frequency")
    common(p)
    p.add_argument("--noiseless", action="store_true", help="skip noise even if the scenario sets it")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("image", help="evaluate one imaging functional on the search grid")
    common(p)
    p.add_argument("--archive", help="MSR archive directory (instead of synthesizing)")
    p.add_argument("--method", choices=["filter", "music", "kirchhoff"])
    p.add_argument("--freq-count", type=int)
    p.add_argument("--freq-index", type=int, help="0-based frequency for music/kirchhoff")
    p.add_argument("--tau", type=float)
    p.add_argument("--preview-pgm", metavar="PATH")
    p.set_defaults(func=cmd_image)

    p = sub.add_parser("report", help="seeded localization-error comparison of methods")
    common(p)
    p.add_argument("--method", action="append",
                   help="comma list such as filter:10,filter:1,kirchhoff:0,music:0")
    p.add_argument("--seeds", type=int, default=20, help="number of consecutive seeds from --seed")
    p.add_argument("--tau", type=float)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("presets", help="list presets or print one")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("validate", help="parse and validate a scenario")
    p.add_argument("--scenario", required=True)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (ScenarioError, InvalidArgument) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
