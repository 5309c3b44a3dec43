//! Quantum multiplication tables: powers of the hyperplane class on
//! CP^n, the product table of CP^1 x CP^1, and the degree-halved real
//! versions where the minimal Chern number allows them.

use toric::io;
use toric::quantum::{qh_real, quantum_relations, QuantumRing};

fn main() {
    for n in 1..=3usize {
        let fan = io::builtin(&format!("cp:{n}")).unwrap().fan;
        let ring = QuantumRing::new(&fan).unwrap();
        let h = ring.divisor(0);
        let mut acc = ring.unit();
        for i in 1..=n + 1 {
            acc = ring.product(&acc, &h).unwrap();
            let tag = if acc == ring.fundamental_q(1) {
                " = [X]·q".to_string()
            } else if acc == ring.point() {
                " = [pt]".to_string()
            } else {
                String::new()
            };
            println!("CP^{n}: h^{i}{tag}");
        }
    }

    let fan = io::builtin("cp1xcp1").unwrap().fan;
    let ring = QuantumRing::new(&fan).unwrap();
    let a = ring.divisor(1);
    let b = ring.divisor(0);
    println!("CP^1 x CP^1: A*B = [pt]: {}", ring.product(&a, &b).unwrap() == ring.point());
    println!("CP^1 x CP^1: A*A = [X]q: {}", ring.product(&a, &a).unwrap() == ring.fundamental_q(1));

    for id in ["cp:2", "cp1xcp1", "blowup-cp2"] {
        let fan = io::builtin(id).unwrap().fan;
        for rel in quantum_relations(&fan).unwrap() {
            println!("{id}: relation over {:?} with q^{}", rel.collection, rel.q_power);
        }
        match qh_real(&fan) {
            Ok(real) => println!("{id}: QH(R) defined, N_R = {}", real.n_r),
            Err(e) => println!("{id}: QH(R) unavailable: {e}"),
        }
    }
}
