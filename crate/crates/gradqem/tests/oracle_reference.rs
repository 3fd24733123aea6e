use gradqem::oracle::{first_beam_frequencies, ss_beam_frequency, ssss_plate_spectrum};
use gradqem::{BeamBc, BeamModel, PlateModel};

// independent arbitrary-precision evaluation of the printed 6x6 determinant
const FROZEN: &[(BeamBc, f64, [f64; 4])] = &[
    (BeamBc::Clamped, 0.005, [22.831048031, 62.9612755813, 123.510980508, 204.355506003]),
    (BeamBc::Cantilever, 0.005, [3.55140182205, 22.2601903356, 62.3545952456, 122.271054611]),
    (BeamBc::ProppedCantilever, 0.005, [15.5757945837, 50.4953861349, 105.421997967, 180.437472953]),
    (BeamBc::FreeFree, 0.005, [22.3767233434, 61.7082800895, 121.052589521, 200.286994996]),
    (BeamBc::Clamped, 0.05, [27.9756276688, 79.9705050603, 164.927765964, 289.661060791]),
    (BeamBc::Cantilever, 0.05, [3.89033682174, 24.7824635557, 71.8633063093, 148.181066416]),
    (BeamBc::ProppedCantilever, 0.05, [17.3230759011, 58.1970742785, 128.00531342, 233.357588101]),
    (BeamBc::FreeFree, 0.05, [22.6922751588, 64.8558607308, 133.71026927, 234.875146459]),
];

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn determinant_roots_match_high_precision_values() {
    for &(bc, g, want) in FROZEN {
        let got = first_beam_frequencies(&BeamModel::default().with_g(g), bc, 4).unwrap();
        assert!(got.complete, "{bc} g={g}");
        for (k, (&a, &b)) in got.omega_bar.iter().zip(&want).enumerate() {
            assert!(rel(a, b) < 1e-8, "{bc} g={g} mode {}: {a} vs {b}", k + 1);
        }
    }
}

#[test]
fn classical_limits() {
    let cases = [
        (BeamBc::Clamped, 22.3732854481),
        (BeamBc::Cantilever, 3.5160152685),
        (BeamBc::ProppedCantilever, 15.418205717),
    ];
    for (bc, want) in cases {
        let got = first_beam_frequencies(&BeamModel::default(), bc, 1).unwrap();
        assert!(rel(got.omega_bar[0], want) < 1e-8, "{bc}");
    }
}

#[test]
fn simply_supported_determinant_equals_closed_form() {
    for g in [0.005, 0.05, 0.1] {
        let got = first_beam_frequencies(&BeamModel::default().with_g(g), BeamBc::SimplySupported, 5).unwrap();
        for (n, w) in got.omega_bar.iter().enumerate() {
            assert!(rel(*w, ss_beam_frequency(g, n + 1)) < 1e-8);
        }
    }
}

#[test]
fn beam_table_labels_are_ten_times_g() {
    // the 0.5 column of the simply supported table is g/L = 0.05; printed
    // digits are sometimes truncated rather than rounded
    let printed = [9.991, 41.381, 98.195, 186.497, 313.743, 488.240];
    for (n, p) in printed.iter().enumerate() {
        let w = ss_beam_frequency(0.05, n + 1);
        assert!((w - p).abs() < 1e-3, "mode {}: {w}", n + 1);
    }
    let printed = [9.871, 39.498, 88.925, 158.226, 247.500, 356.880];
    for (n, p) in printed.iter().enumerate() {
        assert!((ss_beam_frequency(0.005, n + 1) - p).abs() < 1e-3);
    }
}

#[test]
fn navier_plate_columns() {
    let printed = [
        (0.05, [20.220, 52.303, 86.399, 110.201, 147.454, 199.897]),
        (0.1, [21.600, 60.307, 105.624, 139.121, 193.865, 274.562]),
        (0.5, [48.087, 180.218, 359.572, 500.088, 737.906, 1099.535]),
    ];
    for (g, want) in printed {
        let spec = ssss_plate_spectrum(&PlateModel::default().with_g(g), 12);
        let d = gradqem::modal::distinct(&spec, 1e-9);
        for (a, b) in d.iter().zip(&want) {
            assert!(rel(*a, *b) < 5e-4, "g={g}: {a} vs {b}");
        }
    }
}
