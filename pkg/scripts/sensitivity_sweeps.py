"""Write lower/upper sensitivity-bound grids for a scenario as CSV."""

import argparse
from pathlib import Path

from probimmunity.inputs import load_fixture, load_inputs
from probimmunity.sensitivity import DEFAULT_STEPS, parameter_regions, sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--input", help="JSON input (defaults to the bundled sensitivity scenario)")
    parser.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    parser.add_argument("--outdir", default="sweeps")
    args = parser.parse_args()

    inputs = load_inputs(args.input) if args.input else load_fixture("sensitivity")
    joint = inputs.require_joint()
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for which in ("lower", "upper"):
        grid = sweep(joint, which, args.steps)
        path = outdir / f"{which}.csv"
        path.write_text(grid.to_csv())
        print(f"{which}: {path} ({grid.values.min():.3f} .. {grid.values.max():.3f})")
    for name, region in parameter_regions(joint).informative.items():
        lb = "[" if region.low_closed else "("
        rb = "]" if region.high_closed else ")"
        print(f"informative {name}: {lb}{region.low:.4f}, {region.high:.4f}{rb}")


if __name__ == "__main__":
    main()
