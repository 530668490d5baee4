//! Built-in scenarios. Energies are in units of
//! k_BT (k_BT_H for the two-bath set-ups), bosonic frequencies in units of ω₀.

use crate::scenario::*;

pub const PRESET_NAMES: &[&str] = &[
    "fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "fig13",
    "bos2s", "appd",
];

fn lin(start: f64, stop: f64, num: usize) -> Grid {
    Grid::Linspace { start, stop, num }
}

fn scenario(name: &str, provenance: &str, spec: Spec) -> Scenario {
    Scenario { name: name.into(), provenance: provenance.into(), oracle_check: false, spec }
}

const SMALL_BATH: &str = "⟨N̂₀(0)⟩=0, ε₀=−0.5k_BT, Γ=k_BT, μ=0, W=3k_BT and K=8";
const LARGE_BATH: &str = "⟨N̂₀(0)⟩=0, Γ=0.02 k_BT, ε_0=0, μ=k_BT, W=k_BT and K=400";
const CL: &str = "ω_c=4ω_0, γ=0.01ω_0, K=600";
const FCS: &str = "T_C=0.5T_H, Γ=0.05k_BT_H, W=k_BT_H, ω_c=3ω_0";
const BOSE_LOW: &str = "t_0=1/(ω_0γ), ω_0=4k_BT_H, T_C=0.5T_H, γ_H=γ_C=γ=0.0125, W=k_BT_H, K=300";

fn small_bath(k: Vec<usize>, gamma_t: Grid) -> FermRelax {
    FermRelax {
        eps0: -0.5,
        gamma: 1.0,
        bandwidth: 3.0,
        center: 0.0,
        beta: 1.0,
        mu: 0.0,
        n0: 0.0,
        k,
        gamma_t,
        chain_bound: true,
    }
}

fn large_bath(k: Vec<usize>, gamma_t: Grid, chain_bound: bool) -> FermRelax {
    FermRelax {
        eps0: 0.0,
        gamma: 0.02,
        bandwidth: 1.0,
        center: 0.0,
        beta: 1.0,
        mu: 1.0,
        n0: 0.0,
        k,
        gamma_t,
        chain_bound,
    }
}

fn bose_low() -> BoseTransport {
    BoseTransport {
        omega0: 4.0,
        t_hot: 1.0,
        t_cold: 0.5,
        gamma: 0.0125,
        bandwidth: 1.0,
        k: 300,
        t_over_t0: lin(0.0, 5.0, 26),
    }
}

fn two_mode_bose(occupations: Vec<[f64; 2]>, symmetries: Vec<Symmetry>, cutoff: usize) -> TwoModeBose {
    TwoModeBose { occupations, symmetries, eps2_fraction: lin(0.0, 1.0, 21), cutoff }
}

pub fn preset(name: &str) -> Option<Scenario> {
    let s = match name {
        "fig1" => scenario(
            name,
            "fig1: ⟨n_i⟩=0.5, ⟨n_j⟩=0.4, ε_max=√(⟨n_i⟩⟨n_j⟩)",
            Spec::TwoModeFerm(TwoModeFerm { ni: 0.5, nj: 0.4, eps2: lin(0.0, 0.2, 41) }),
        ),
        "fig2" => scenario(
            name,
            &format!("fig2: {SMALL_BATH}"),
            Spec::FermExact(small_bath(vec![8], lin(0.0, 5.0, 51))),
        ),
        "fig3" => scenario(
            name,
            &format!("fig3: Γt=3, K∈{{4,6,8,10,12}}, other parameters {SMALL_BATH}"),
            Spec::FermExact(small_bath(vec![4, 6, 8, 10, 12], Grid::List(vec![3.0]))),
        ),
        "fig4" => scenario(
            name,
            &format!("fig4: exact vs perturbative I_M and J^F, {SMALL_BATH}"),
            Spec::FermExact(small_bath(vec![8], lin(0.0, 5.0, 51))),
        ),
        "fig5" => scenario(
            name,
            &format!("fig5: exact vs Markovian S_S and −βQ, {LARGE_BATH}"),
            Spec::FermRelax(large_bath(vec![400], lin(0.0, 5.0, 51), false)),
        ),
        "fig6" => scenario(
            name,
            &format!("fig6: ledger and Holevo chain bound, {LARGE_BATH}"),
            Spec::FermRelax(large_bath(vec![400], lin(0.0, 5.0, 26), true)),
        ),
        "fig7" => scenario(
            name,
            &format!("fig7: I_SE, J_SE, D_SE, {LARGE_BATH}"),
            Spec::FermRelax(large_bath(vec![400], lin(0.0, 5.0, 51), false)),
        ),
        "fig8" => scenario(
            name,
            &format!("fig8: exact vs perturbative I_M at Γt=5 over K, other parameters {LARGE_BATH}"),
            Spec::FermRelax(large_bath(vec![50, 100, 150, 200, 300, 400], Grid::List(vec![5.0]), false)),
        ),
        "fig9" => scenario(
            name,
            &format!("fig9: vacuum and thermal-2T starts, k_BT/ω_0∈{{0.5,1,4}}, {CL}"),
            Spec::BoseRelax(BoseRelax {
                omega0: 1.0,
                gamma: 0.01,
                omega_c: 4.0,
                k: 600,
                temperatures: vec![0.5, 1.0, 4.0],
                start_factors: vec![0.0, 2.0],
                t: lin(0.0, 500.0, 26),
                system_environment: false,
            }),
        ),
        "fig10" => scenario(
            name,
            &format!("fig10: {FCS}"),
            Spec::FcsSweep(FcsSweep {
                eps0: lin(0.1, 6.0, 60),
                t_hot: 1.0,
                t_cold: 0.5,
                gamma: 0.05,
                bandwidth: 1.0,
                omega_c_factor: 3.0,
            }),
        ),
        "fig11" => scenario(
            name,
            "fig11: ε_0=4k_BT_H, μ_H=μ_C=0, T_C=0.5T_H, Γ_H=Γ_C=Γ=0.05k_BT_H, W=k_BT_H, K=400",
            Spec::FermTransport(FermTransport {
                eps0: 4.0,
                t_hot: 1.0,
                t_cold: 0.5,
                gamma: 0.05,
                bandwidth: 1.0,
                k: 400,
                gamma_t: lin(0.0, 5.0, 11),
                chain_bound: true,
            }),
        ),
        "fig12" => scenario(name, &format!("fig12: σ(t)−σ(t_0), {BOSE_LOW}"), Spec::BoseTransport(bose_low())),
        "fig13" => scenario(name, &format!("fig13: ledger constituents, {BOSE_LOW}"), Spec::BoseTransport(bose_low())),
        "bos2s" => scenario(
            name,
            "bos2s: ⟨n_i⟩=⟨n_j⟩=3 and ⟨n_i⟩=4, ⟨n_j⟩=2, ε_max=√((⟨n_i⟩+1)⟨n_j⟩)",
            Spec::TwoModeBose(two_mode_bose(vec![[3.0, 3.0], [4.0, 2.0]], vec![Symmetry::SqueezedThermal], 30)),
        ),
        "appd" => scenario(
            name,
            "appd: ⟨n_i⟩=⟨n_j⟩=1; ε_q=−ε_p=ε, ε_q=ε_p=ε, ε_q=ε with ε_p=0",
            Spec::TwoModeBose(two_mode_bose(
                vec![[1.0, 1.0]],
                vec![Symmetry::SqueezedThermal, Symmetry::Equal, Symmetry::PositionOnly],
                20,
            )),
        ),
        _ => return None,
    };
    Some(s)
}
