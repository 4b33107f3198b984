//! Whittles `ft_n^k` and prints the survivors per homological degree.
//!
//!     cargo run --example whittle_torus -- 3 3

use torus_whittle::states::GradingConvention;
use torus_whittle::whittle::whittle;
use torus_whittle::BraidWord;

fn main() -> torus_whittle::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, k) = match args[..] {
        [n, k, ..] => (n, k),
        _ => (3, 3),
    };
    let braid = BraidWord::torus(n, k)?;
    let w = whittle(&braid, GradingConvention::Printed)?;
    println!(
        "ft_{n}^{k}: {} generators, {} eliminations, {} connecting maps, {} survivors",
        w.space.enhanced_count(),
        w.isomorphisms.len(),
        w.graph.edges.len(),
        w.survivor_count()
    );
    for (h, states) in &w.survivors {
        let list: Vec<String> = states.iter().map(|e| e.to_string()).collect();
        println!("h={h:>2} ({:>3}): {}", states.len(), list.join(" "));
    }
    Ok(())
}
