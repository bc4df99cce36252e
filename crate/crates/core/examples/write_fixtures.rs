//! Regenerates the documents under `data/`.
//!
//! Usage: `cargo run -p dqb-core --example write_fixtures -- <dir>`

use std::fs;
use std::path::Path;

use dqb_core::comodules::{hhat, induce_f, LeftComodule};
use dqb_core::groups::{cyclic_cocycle, group_antipode_data, group_dqb, idempotent_monoid_bialgebra, trivial_dqb, GroupData};
use dqb_core::serialization::{serialize_antipode, serialize_dqb, serialize_module, serialize_preantipode};
use dqb_core::{Matrix, Scalar};

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap_or_else(|e| panic!("writing {name}: {e}"));
}

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "data".into());
    let dir = Path::new(&dir);
    fs::create_dir_all(dir).expect("creating output directory");

    for (n, r, name) in [(2, 0, "z2_trivial"), (2, 1, "z2_sign"), (3, 0, "z3_r0"), (3, 1, "z3_r1"), (4, 0, "z4_r0"), (4, 1, "z4_r1")] {
        let group = GroupData::cyclic(n);
        let theta = cyclic_cocycle(n as u32, r).expect("valid parameters");
        let h = group_dqb(&group, &theta).expect("twisted group algebra");
        write(dir, &format!("{name}.dqb.json"), &serialize_dqb(&h));
        let data = group_antipode_data(&group, &theta).expect("antipode data");
        write(dir, &format!("{name}.antipode.json"), &serialize_antipode(&h, &data));
        if name == "z2_sign" {
            let mut wrong = data.clone();
            wrong.beta = h.counit.clone();
            write(dir, "z2_sign_beta_counit.antipode.json", &serialize_antipode(&h, &wrong));
            write(dir, "z2_sign.hhat.module.json", &serialize_module(&h, &hhat(&h)));
            let trivial = induce_f(&h, &LeftComodule::trivial(&h));
            write(dir, "z2_sign.f_trivial.module.json", &serialize_module(&h, &trivial));
        }
    }

    let monoid = idempotent_monoid_bialgebra();
    write(dir, "idempotent_monoid.dqb.json", &serialize_dqb(&monoid));
    write(dir, "idempotent_monoid.zero.preantipode.json", &serialize_preantipode(&monoid, &Matrix::zeros(2, 2)));
    write(dir, "trivial.dqb.json", &serialize_dqb(&trivial_dqb()));

    // ℤ/3 with a single sign flip θ(g, g, g) = -1: normalized but not a cocycle
    let mut broken = group_dqb(&GroupData::cyclic(3), &cyclic_cocycle(3, 0).unwrap()).unwrap();
    broken.omega[(0, 13)] = Scalar::from_int(-1);
    broken.omega_inv[(0, 13)] = Scalar::from_int(-1);
    write(dir, "z3_broken_cocycle.dqb.json", &serialize_dqb(&broken));

    let text = serialize_dqb(&trivial_dqb());
    write(dir, "bad_index.dqb.json", &text.replacen("[0, 0, 0, \"1\"]", "[0, 1, 0, \"1\"]", 1));
}

