//! Builds `ft_n^k` and prints where each crossing sits.
//!
//!     cargo run --example torus_braid -- 3 2

use torus_whittle::BraidWord;

fn main() -> torus_whittle::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, k) = match args[..] {
        [n, k, ..] => (n, k),
        _ => (3, 2),
    };
    let b = BraidWord::torus(n, k)?;
    println!("{b}: {} crossings, torus power {:?}", b.len(), b.torus_power());
    for p in 1..=b.len() {
        let (column, row) = b.crossing_position(p)?;
        let next = b.next_occurrence(p).map_or("-".to_string(), |q| q.to_string());
        println!("crossing {p:>2}: sigma_{} at column {column}, row {row}, next on this row {next}", b.generator(p));
    }
    Ok(())
}
