"""Regenerate the golden report files: python tests/make_goldens.py

Run this only after deliberately changing report content or numerics; the
golden tests exist to catch *accidental* schema or value drift.
"""

from __future__ import annotations

from pathlib import Path

from diskschwarz import api

GOLDEN_DIR = Path(__file__).parent / "golden"


def golden_cases() -> dict[str, api.Report]:
    return {
        "schwarzian_hille": api.run_schwarzian(
            api.SchwarzianRequest(f="((1+z)/(1-z))^(1i)", at=api.ComplexValue(re=0.0))
        ),
        "schwarzian_catenoid_composite": api.run_schwarzian(
            api.SchwarzianRequest(
                h="0.05*(((1+z)/(1-z))^(1i))",
                q="1i/(0.05*(((1+z)/(1-z))^(1i)))",
                at=api.ComplexValue(re=0.25, im=0.1),
            )
        ),
        "norm_mobius": api.run_norm(api.NormRequest(f="(z-0.3)/(1-0.3*z)", depth=5)),
        "criterion_koebe": api.run_criterion(
            api.CriterionRequest(f="z/(1-z)^2", p="classical", depth=6)
        ),
        "valence_koebe": api.run_valence(
            api.ValenceRequest(f="z/(1-z)^2", w=api.ComplexValue(re=0.0), r=0.5)
        ),
        "ode_parametric": api.run_ode(api.OdeRequest(p="param:1.5", delta=1.0)),
        "lift_mesh": api.run_lift(
            api.LiftRequest(
                h="z",
                q="0.5*z",
                at=api.ComplexValue(re=0.5, im=0.25),
                mesh=api.MeshSpec(r_max=0.8, n_r=2, n_theta=3),
            )
        ),
        "shear_koebe": api.run_shear(
            api.ShearRequest(phi="z/(1-z)^2", q="z", at=api.ComplexValue(re=0.3))
        ),
        "gallery_koebe": api.run_gallery_report(api.GalleryRequest(only="koebe")),
    }


def main() -> None:
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, report in golden_cases().items():
        path = GOLDEN_DIR / f"{name}.json"
        path.write_text(api.render_report(report))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
