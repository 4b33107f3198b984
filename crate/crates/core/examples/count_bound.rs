//! Compares survivor counts per degree with the bound and its terms.
//!
//!     cargo run --example count_bound -- 3 4

use torus_whittle::counting::count_bound;
use torus_whittle::states::GradingConvention;
use torus_whittle::tl::enumerate_jnf;
use torus_whittle::whittle::whittle;
use torus_whittle::BraidWord;

fn main() -> torus_whittle::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, k) = match args[..] {
        [n, k, ..] => (n, k),
        _ => (3, 4),
    };
    let w = whittle(&BraidWord::torus(n, k)?, GradingConvention::Printed)?;
    println!("h\tsurvivors\tbound\tp(k,2) variant\tN(n,h)\tnormal forms");
    for h in 0..=w.braid().len() {
        let terms = count_bound(n as u64, k as u64, h as u64);
        let count = w.survivors.get(&(h as i64)).map_or(0, Vec::len);
        println!(
            "{h}\t{count}\t{}\t{}\t{}\t{}",
            terms.total,
            terms.total_with_pk2,
            terms.formula_n,
            enumerate_jnf(n, h).len()
        );
    }
    Ok(())
}
