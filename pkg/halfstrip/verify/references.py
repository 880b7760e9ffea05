"""
Bundled reference map: the quote anchor attached to every check.

Each report's ``paper_ref`` field is looked up here, so a report can always
be traced back to the statement it exercises.
"""

REFERENCE_MAP = {
    "CHK-K1": "∫_Γ K_z(ζ,ζ₀) dζ = 1",
    "CHK-K2": "C|z|/(|ζ−ζ₀|²+|z|²)",
    "CHK-C1": "F(w) & if w ∈ Ω₊",
    "CHK-C2": "−F(w) & if w ∈ Ω₋",
    "CHK-C3": "≤ (5/2)^{1/p} A_p",
    "CHK-C4": "A_p^p = max{p/(p−1), p^{p−1}}",
    "CHK-J1": "sum of F₊(ζ) and F₋(ζ)",
    "CHK-O1": "∫_Γ F(ζ)G(ζ) dζ = 0",
    "CHK-B1": "for all α ∈ Ω₋",
    "CHK-N1": "(min{σ−|u|, v})^{−1/p}",
    "CHK-N2": "uniformly for |u| ≤ s",
    "CHK-N3": "F(w) ∈ H^p(ℂ₋)",
    "CHK-N4": "H^p({Re w > −σ}) + H^p(ℂ₊)",
    "CHK-L1": "≤ √π ‖f‖",
    "CHK-M1": "(2σ/π) arcsin z",
    "CHK-M2": "Re Φ₊′(x+iy) > 0",
    "CHK-M3": "3·2^{q+1}/((q−1)ε^{q−1})",
    "CHK-T1": "5^{−1/p} ≤ ‖T₊‖ ≤ 1",
    "CHK-BL1": "|B(x)|=1 a.e.",
    "CHK-BL2": "‖F‖ ≤ ‖G‖",
    "CHK-NT1": "K_z(ζ,ζ₀)F(ζ) dζ = F(ζ₀)",
    "CHK-N5": "B(½,(p−1)/2)·((s+u₀)^{1−p} + (v₀−t)^{1−p} + (s−u₀)^{1−p})",
    "CHK-N6": "‖F‖_{L^p(Γ)} ≤ ‖F‖_{H^p(Ω±)}",
    "CHK-V1": "≤ 2^{−1/p}‖f‖_{H^p(ℂ₊)}",
    "CHK-E1": "∫_{C_n}|F|^p|dw| ≤ 2‖F‖^p",
    "CHK-H1": "F ∈ H^{np} ⇔ F^n ∈ H^p",
}
