//! Parameter points shared by the benchmarks.

use chiral_dicke::ModelParams;

/// `omega_c = 1`, `omega_z = 1.5`, `g = rel * g_c` along `phi`.
pub fn point(rel: f64, phi: f64, un: f64, n_atoms: u32) -> ModelParams {
    let base = ModelParams::builder()
        .omega_z(1.5)
        .un(un)
        .atoms(n_atoms)
        .build()
        .expect("valid base point");
    base.with_polar(rel * base.critical_coupling(), phi)
        .expect("valid coupling")
}
