//! Morse theory of the moment map: indices per vertex for several
//! generic covectors, the xi-independent Betti numbers of the real part,
//! and the degree-doubling comparison with the ambient homology.

use toric::homology::homology_ring;
use toric::io;
use toric::lattice::IntVector;
use toric::morse;

fn main() {
    for id in ["cp:2", "cp1xcp1", "blowup-cp2"] {
        let input = io::builtin(id).unwrap();
        let polytope = input.polytope.unwrap();
        println!("{id}:");
        for xi in [[1, 2], [3, -7], [-5, 2]] {
            let xi = IntVector::from_i64(&xi);
            let profile = morse::morse_profile(&polytope, &xi).unwrap();
            println!("  xi = {:?}: betti_R = {:?}", xi.0, profile.betti_r);
        }
        let xi = morse::suggest_xi(&polytope).unwrap();
        let profile = morse::morse_profile(&polytope, &xi).unwrap();
        let (_, basis) = homology_ring(&input.fan).unwrap();
        let mismatches = morse::compare_with_homology(&profile, &basis).unwrap();
        println!(
            "  degree doubling vs H_*(X): {}; displacement bound {}",
            if mismatches.is_empty() { "pass" } else { "FAIL" },
            morse::displacement_bound(&polytope).unwrap()
        );
    }
}
