//! Reduces a Temperley-Lieb word to normal form and prints every step.
//!
//!     cargo run --example tl_reduce -- 4 "3 1 3 2"

use torus_whittle::tl::{d_move_reduce, evaluate, reduce_to_jnf, TlWord};

fn main() -> torus_whittle::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(4);
    let text = args.next().unwrap_or_else(|| "3 1 3 2 1".to_string());
    let word = TlWord::parse(n, &text)?;
    let d = evaluate(&word);
    println!("{word}: pairing {:?}, {} loops", d.pairing.partners(), d.loops);

    let path = reduce_to_jnf(&word);
    for (w, m) in path.words.iter().zip(&path.moves) {
        println!("  {w:<20} --{m}-->");
    }
    println!("  {}", path.end());

    match d_move_reduce(&word) {
        Some(p) => println!("D-moves alone reach {} in {} steps", p.end(), p.len()),
        None => println!("D-moves alone do not reach normal form"),
    }
    Ok(())
}
