mod support;

use proptest::prelude::*;
use support::*;
use vqe_core::chemistry::integrals::{
    boys_f0, coulomb_primitive, eri_primitive, kinetic_primitive, overlap_primitive,
};
use vqe_core::chemistry::{
    compute_integrals, hartree_fock, sto3g_basis, Atom, ContractedGaussian, MoleculeGeometry,
};

const QUADRATURE_TOL: f64 = 1e-7;

#[test]
fn boys_against_quadrature() {
    let mut x = 0.0;
    while x <= 50.0 {
        let (analytic, numeric) = (boys_f0(x), boys_quadrature(x));
        assert!((analytic - numeric).abs() < 1e-12, "x = {x}: {analytic} vs {numeric}");
        x += 0.125;
    }
    for x in [1e-14, 1e-12, 5e-11, 9.9e-11, 1.01e-10, 1e-9, 1e-6] {
        assert!((boys_f0(x) - boys_quadrature(x)).abs() < 1e-12, "x = {x}");
    }
}

fn exponent() -> impl Strategy<Value = f64> {
    0.12f64..3.5
}

fn coordinate() -> impl Strategy<Value = f64> {
    -1.5f64..1.5
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn overlap_and_kinetic_against_quadrature(
        a in exponent(), b in exponent(),
        ra in prop::array::uniform3(coordinate()), rb in prop::array::uniform3(coordinate()),
    ) {
        let s = overlap_primitive(a, ra, b, rb);
        prop_assert!((s - overlap_quadrature(a, ra, b, rb)).abs() < QUADRATURE_TOL);
        let t = kinetic_primitive(a, ra, b, rb);
        prop_assert!((t - kinetic_quadrature(a, ra, b, rb)).abs() < QUADRATURE_TOL);
    }

    #[test]
    fn nuclear_attraction_against_quadrature(
        a in exponent(), b in exponent(),
        za in coordinate(), zb in coordinate(), zc in -2.5f64..2.5,
    ) {
        let v = coulomb_primitive(a, [0.0, 0.0, za], b, [0.0, 0.0, zb], [0.0, 0.0, zc]);
        let q = coulomb_quadrature_on_axis(a, za, b, zb, zc);
        prop_assert!((v - q).abs() < QUADRATURE_TOL, "{} vs {}", v, q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn electron_repulsion_against_quadrature(
        a in exponent(), b in exponent(), c in exponent(), d in exponent(),
        za in coordinate(), zb in coordinate(), zc in coordinate(), zd in coordinate(),
    ) {
        let on = |z: f64| [0.0, 0.0, z];
        let analytic = eri_primitive((a, on(za)), (b, on(zb)), (c, on(zc)), (d, on(zd)));
        // the potential of g_c g_d is the one-center Coulomb integral, itself
        // checked against quadrature above
        let numeric = eri_quadrature_on_axis((a, za), (b, zb), |r| coulomb_primitive(c, on(zc), d, on(zd), r));
        prop_assert!((analytic - numeric).abs() < QUADRATURE_TOL, "{} vs {}", analytic, numeric);
    }
}

#[test]
fn contracted_functions_are_normalized() {
    let g = ContractedGaussian::sto3g_hydrogen([0.3, -0.2, 1.1]);
    let mut norm = 0.0;
    for (a, wa) in g.primitives() {
        for (b, wb) in g.primitives() {
            norm += wa * wb * overlap_quadrature(a, g.center, b, g.center);
        }
    }
    assert!((norm - 1.0).abs() < 1e-9, "{norm}");
}

#[test]
fn single_atom_energy_by_radial_quadrature() {
    // <phi| -1/2 lap - 1/r |phi> for the STO-3G 1s on a lone proton, from the
    // radial function alone: phi(r) = sum w_k exp(-a_k r^2).
    let g = ContractedGaussian::sto3g_hydrogen([0.0; 3]);
    let prims: Vec<(f64, f64)> = g.primitives().collect();
    let phi = |r: f64| prims.iter().map(|&(a, w)| w * (-a * r * r).exp()).sum::<f64>();
    let dphi = |r: f64| prims.iter().map(|&(a, w)| -2.0 * a * r * w * (-a * r * r).exp()).sum::<f64>();
    let rule = Composite::new(0.0, 20.0, 80);
    let four_pi = 4.0 * std::f64::consts::PI;
    let norm = four_pi * rule.integrate(|r| r * r * phi(r).powi(2));
    let kinetic = four_pi * rule.integrate(|r| 0.5 * r * r * dphi(r).powi(2));
    let attraction = -four_pi * rule.integrate(|r| r * phi(r).powi(2));
    assert!((norm - 1.0).abs() < 1e-9);
    let energy = kinetic + attraction;
    assert!((energy - -0.466582).abs() < 1e-5, "{energy}");

    let atom = [Atom::new("H", [0.0; 3]).unwrap()];
    let ints = vqe_core::chemistry::integrals::integrals_for_nuclei(&[g], &atom).unwrap();
    assert!((ints.core_hamiltonian()[(0, 0)] - energy).abs() < 1e-9);
}

fn h2_hf(geometry: &MoleculeGeometry) -> f64 {
    let ints = compute_integrals(&sto3g_basis(geometry).unwrap(), geometry).unwrap();
    hartree_fock(&ints, 2).unwrap().hf_total_energy
}

fn rotation(axis: [f64; 3], angle: f64) -> [[f64; 3]; 3] {
    let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let [x, y, z] = axis.map(|v| v / n);
    let (s, c) = angle.sin_cos();
    let t = 1.0 - c;
    [
        [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
        [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
        [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
    ]
}

#[test]
fn hf_energy_invariant_under_rigid_motion() {
    for d in [0.45, 0.725, 1.3, 2.2] {
        let g = MoleculeGeometry::hydrogen_molecule(d).unwrap();
        let e = h2_hf(&g);
        let moved = g.translated([1.7, -3.1, 0.4]);
        assert!((h2_hf(&moved) - e).abs() < 1e-10);
        let turned = g.rotated(rotation([0.3, 1.0, -0.6], 1.234)).translated([-0.5, 2.0, 0.9]);
        assert!((h2_hf(&turned) - e).abs() < 1e-10);
    }
}

#[test]
fn scf_energy_non_increasing_over_scan() {
    for k in 0..47 {
        let d = 0.2 + 0.05 * k as f64;
        let g = MoleculeGeometry::hydrogen_molecule(d).unwrap();
        let ints = compute_integrals(&sto3g_basis(&g).unwrap(), &g).unwrap();
        let hf = hartree_fock(&ints, 2).unwrap();
        for w in hf.energy_history.windows(2).skip(1) {
            assert!(w[1] <= w[0] + 1e-12, "d = {d}: {} -> {}", w[0], w[1]);
        }
    }
}
