//! Maslov index of a real disc in the blow-up of CP^2 whose lift has a
//! vanishing component: the disc (z, 1, 1, 0) meets a divisor at
//! infinity, so it is reparametrized by z -> z/(z - 1) and the index is
//! then computed by the divisor-expansion formula.

use toric::curves::{
    curve_class, infinity_stratum, maslov_general, reparametrize, LiftComponent, Mobius,
    RealDiscLift,
};
use toric::homology::chern_pairing;
use toric::io;

fn main() {
    let fan = io::builtin("blowup-cp2").unwrap().fan;
    let raw = RealDiscLift::new(vec![
        LiftComponent::monic(vec![], vec![0.0]),
        LiftComponent::constant(1.0),
        LiftComponent::constant(1.0),
        LiftComponent::Zero,
    ]);
    let stratum = infinity_stratum(&fan, &raw).unwrap();
    let names: Vec<String> = stratum.iter().map(|i| format!("D{}", i + 1)).collect();
    println!("(z, 1, 1, 0): divisors met at infinity: {}", names.join(", "));

    let phi = Mobius::new(1.0, 0.0, 1.0, -1.0).unwrap();
    let lift = reparametrize(&fan, &raw, &phi).unwrap();
    let after: Vec<String> = infinity_stratum(&fan, &lift)
        .unwrap()
        .iter()
        .map(|i| format!("D{}", i + 1))
        .collect();
    println!("after z -> z/(z-1): divisors met at infinity: {}", after.join(", "));

    let result = maslov_general(&fan, &lift, None).unwrap();
    let lambda = curve_class(&fan, &lift).unwrap();
    println!("curve class of the double: {:?}", lambda.0);
    println!("c1 pairing: {}", chern_pairing(&fan, &lambda).unwrap());
    println!("Maslov index mu = {}", result.mu);
}
