use gradqem::beam::beam_elastic_frequencies;
use gradqem::oracle::{first_beam_frequencies, ss_beam_frequency};
use gradqem::{BeamBasis, BeamBc, BeamModel};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn elastic(bc: BeamBc, basis: BeamBasis, n: usize, g: f64, count: usize) -> Vec<f64> {
    beam_elastic_frequencies(&BeamModel::default().with_g(g), bc, basis, n, count).unwrap()
}

#[test]
fn classical_simply_supported_n13() {
    let printed = [9.870, 39.478, 88.826, 157.914, 246.740, 355.306];
    for basis in [BeamBasis::Lagrange, BeamBasis::Hermite] {
        let w = elastic(BeamBc::SimplySupported, basis, 13, 1e-5, 6);
        for (a, b) in w.iter().zip(&printed) {
            assert!(rel(*a, *b) < 5e-3, "{basis}: {a} vs {b}");
        }
    }
}

#[test]
fn hermite_matches_navier() {
    for g in [0.005, 0.05] {
        let w = elastic(BeamBc::SimplySupported, BeamBasis::Hermite, 15, g, 4);
        for (n, a) in w.iter().enumerate() {
            assert!(rel(*a, ss_beam_frequency(g, n + 1)) < 1e-6, "g={g} mode {}", n + 1);
        }
    }
}

#[test]
fn hermite_matches_oracle_when_layer_resolved() {
    for bc in BeamBc::ALL {
        let model = BeamModel::default().with_g(0.05);
        let o = first_beam_frequencies(&model, bc, 4).unwrap().omega_bar;
        let w = elastic(bc, BeamBasis::Hermite, 15, 0.05, 4);
        for (a, b) in w.iter().zip(&o) {
            assert!(rel(*a, *b) < 1e-4, "{bc}: {a} vs {b}");
        }
    }
}

#[test]
fn thin_layer_overestimates() {
    // unresolved w'' = 0 layers stiffen the element, never soften it
    for bc in [BeamBc::Clamped, BeamBc::Cantilever, BeamBc::ProppedCantilever] {
        let model = BeamModel::default().with_g(0.005);
        let o = first_beam_frequencies(&model, bc, 4).unwrap().omega_bar;
        for basis in [BeamBasis::Lagrange, BeamBasis::Hermite] {
            let w = elastic(bc, basis, 15, 0.005, 4);
            for (a, b) in w.iter().zip(&o) {
                assert!(a > b && rel(*a, *b) < 0.015, "{bc} {basis}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn lagrange_reproduces_reference_columns() {
    // simply supported and free-free, g/L = 0.05, N = 15
    let ss = [9.984, 41.302, 97.725, 185.378];
    let ff = [22.691, 64.841, 133.627, 234.596];
    for (bc, want) in [(BeamBc::SimplySupported, ss), (BeamBc::FreeFree, ff)] {
        let w = elastic(bc, BeamBasis::Lagrange, 15, 0.05, 4);
        for (a, b) in w.iter().zip(&want) {
            assert!((a - b).abs() < 1.5e-3, "{bc}: {a} vs {b}");
        }
    }
}

#[test]
fn nodal_rule_reproduces_reference_hermite_columns() {
    let cases = [
        (BeamBc::Clamped, [27.976, 79.970, 164.927, 289.661]),
        (BeamBc::Cantilever, [3.890, 24.782, 71.863, 148.181]),
        (BeamBc::ProppedCantilever, [17.324, 58.197, 128.005, 233.357]),
    ];
    for (bc, want) in cases {
        let w = elastic(bc, BeamBasis::HermiteNodal, 15, 0.05, 4);
        for (a, b) in w.iter().zip(&want) {
            assert!((a - b).abs() < 1.5e-3, "{bc}: {a} vs {b}");
        }
    }
}

#[test]
fn hermite_convergence_is_monotone() {
    let g = 0.05;
    let err = |n: usize| -> Vec<f64> {
        let w = elastic(BeamBc::SimplySupported, BeamBasis::Hermite, n, g, 3);
        w.iter().enumerate().map(|(i, a)| rel(*a, ss_beam_frequency(g, i + 1))).collect()
    };
    let mut prev = err(7);
    for n in 8..=13 {
        let e = err(n);
        for m in 0..3 {
            assert!(e[m] < prev[m] || e[m] < 1e-8, "mode {} at N={n}", m + 1);
        }
        prev = e;
    }
    assert!(err(10).iter().all(|&e| e < 1e-4));
}

#[test]
fn free_free_has_two_rigid_modes() {
    for g in [1e-5, 0.05] {
        for basis in [BeamBasis::Lagrange, BeamBasis::Hermite] {
            let model = BeamModel::default().with_g(g);
            let r = gradqem::beam::beam_frequencies(&model, BeamBc::FreeFree, basis, 11, 6).unwrap();
            assert_eq!(r.omega_bar.iter().filter(|&&w| w < 1e-3).count(), 2, "{basis} g={g}");
        }
    }
}

#[test]
fn frequencies_scale_free_of_section() {
    let a = BeamModel::default().with_g(0.05);
    let b = BeamModel { e: 7.0e10, i: 3.0e-4, area: 0.02, rho: 2700.0, length: 2.0, g: 0.1 };
    for bc in BeamBc::ALL {
        let wa = beam_elastic_frequencies(&a, bc, BeamBasis::Hermite, 13, 4).unwrap();
        let wb = beam_elastic_frequencies(&b, bc, BeamBasis::Hermite, 13, 4).unwrap();
        for (x, y) in wa.iter().zip(&wb) {
            assert!(rel(*x, *y) < 1e-7, "{bc}");
        }
    }
}
