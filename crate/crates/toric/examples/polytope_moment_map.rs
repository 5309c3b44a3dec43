//! Delzant checks, vertex enumeration, lattice-point embeddings, and the
//! moment-map round trip: the image of each vertex's fixed point under
//! the monomial embedding maps back to the vertex.

use num_complex::Complex64;
use toric::io;

fn main() {
    for id in ["cp:2", "cp1xcp1", "blowup-cp2"] {
        let input = io::builtin(id).unwrap();
        let p = input.polytope.unwrap();
        let report = p.delzant_check().unwrap();
        println!("{id}: lattice = {}, Delzant = {}", report.lattice, report.delzant);
        let embedding = p.lattice_points().unwrap();
        println!("  {} lattice points", embedding.lattice_points.len());
        for vertex in p.vertices().unwrap() {
            let fixed: Vec<Complex64> = p.fixed_point_coordinates(&vertex);
            let image = embedding.moment_map(&embedding.embed(&fixed)).unwrap();
            let coords: Vec<String> = vertex.point.iter().map(|c| c.to_string()).collect();
            let max_err: f64 = image
                .iter()
                .zip(&vertex.point)
                .map(|(x, p)| {
                    use num_traits::ToPrimitive;
                    (x - p.to_f64().unwrap()).abs()
                })
                .fold(0.0, f64::max);
            println!("  vertex ({}) recovered with error {max_err:.2e}", coords.join(", "));
        }
    }
}
