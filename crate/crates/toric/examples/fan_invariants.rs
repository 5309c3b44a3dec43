//! Fan combinatorics for the three builtin geometries: validation,
//! primitive collections, minimal Chern number, and the Fano test.

use toric::io;

fn main() {
    for id in ["cp:2", "cp:3", "cp1xcp1", "blowup-cp2"] {
        let input = io::builtin(id).unwrap();
        let fan = &input.fan;
        let report = fan.validate();
        println!("{id}: valid = {}, smooth = {}, complete = {}", report.valid, report.smooth, report.complete);
        let collections = fan.primitive_collections().unwrap();
        for pc in &collections {
            let names: Vec<String> = pc.iter().map(|i| format!("v{}", i + 1)).collect();
            println!("  primitive collection {{{}}}", names.join(", "));
        }
        println!("  C_X = {}", fan.minimal_chern().unwrap());
        println!("  Fano: {}", fan.is_fano().unwrap());
    }
}
