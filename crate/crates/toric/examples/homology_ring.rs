//! The Z2 homology ring from the Stanley-Reisner presentation: Betti
//! numbers and intersection products of divisor classes.

use toric::homology::homology_ring;
use toric::io;

fn main() {
    for id in ["cp:2", "cp1xcp1", "blowup-cp2"] {
        let input = io::builtin(id).unwrap();
        let (presentation, basis) = homology_ring(&input.fan).unwrap();
        let n = basis.classical_dim();
        let ranks: Vec<usize> = (0..=n).map(|d| basis.rank_codegree(2 * d)).collect();
        println!(
            "{id}: ranks {ranks:?}, total {}, {} SR generators",
            basis.total_rank,
            presentation.sr_generators.len()
        );
        // multiply all divisor pairs; the top-degree hits land on [pt]
        for i in 0..input.fan.num_rays() {
            for j in i..input.fan.num_rays() {
                let product = basis.intersection_product(
                    &basis.divisor_class(i),
                    &basis.divisor_class(j),
                );
                if product == basis.point_class() {
                    println!("  [D{}] . [D{}] = [pt]", i + 1, j + 1);
                }
            }
        }
    }
}
