//! Benchmark inputs.

use dqb_core::comodules::hhat;
use dqb_core::groups::cyclic_dqb;
use dqb_core::preantipode::solve_preantipode;
use dqb_core::{DualQuasiBialgebra, HopfBicomodule, Preantipode};

/// A twisted group algebra of ℤ/n with H ⊗̂ H and a preantipode.
pub struct Input {
    pub name: String,
    pub h: DualQuasiBialgebra,
    pub module: HopfBicomodule,
    pub s: Preantipode,
}

pub fn cyclic(n: u32, r: u32) -> Input {
    let h = cyclic_dqb(n, r).expect("valid cocycle parameters");
    let s = solve_preantipode(&h).expect("solver").expect("group algebras have preantipodes").particular;
    Input { name: format!("z{n}_r{r}"), module: hhat(&h), s: Preantipode { s }, h }
}

pub fn inputs() -> Vec<Input> {
    vec![cyclic(2, 1), cyclic(4, 1)]
}
