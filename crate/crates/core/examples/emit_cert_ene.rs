//! Prints the derived normal-closure certificate for `[x,y]` over Q.

use strongac::counterexample::{derive_cert_ene, evans_side};

fn main() {
    let c = derive_cert_ene().expect("derivation");
    assert!(c.check(&evans_side()));
    println!("# [x,y] as a product of conjugates of Q's relators");
    println!("# <sign> <relator index> <conjugator>");
    print!("{}", c.witness);
}
