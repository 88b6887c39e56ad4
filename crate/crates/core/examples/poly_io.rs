//! Polynomials on Ω_K^n: sampling, coefficient recovery and JSON interchange.

use remez_lab::io::{from_json, to_json};
use remez_lab::poly::{random_poly, Scheme};
use remez_lab::Poly;

fn main() -> remez_lab::Result<()> {
    let f = random_poly(2, 2, 3, 4, Scheme::Unimodular)?;
    println!("f = {f}");
    let samples = f.inverse_dft()?;
    let back = Poly::group_dft(&samples, f.n(), f.modulus())?;
    println!("coefficient recovery gap {:.2e}", f.max_coeff_diff(&back));

    let text = to_json(&f)?;
    println!("{text}");
    println!("roundtrip identical: {}", from_json(&text)? == f);
    match from_json(r#"{"K":3,"n":1,"d":3,"terms":[{"alpha":[3],"re":1.0,"im":0.0}]}"#) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
