//! Lists the Kauffman states of `ft_n^k` with their loops, then the
//! differential out of each enhanced state of one chosen state.
//!
//!     cargo run --example resolve_states -- 2 3

use torus_whittle::states::{enumerate_states, resolve, GradingConvention, StateSpace};
use torus_whittle::BraidWord;

fn main() -> torus_whittle::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, k) = match args[..] {
        [n, k, ..] => (n, k),
        _ => (2, 3),
    };
    let b = BraidWord::torus(n, k)?;
    let states = enumerate_states(&b)?;
    for s in &states {
        let r = resolve(&b, *s);
        let loops: Vec<String> = r.loops.iter().map(|l| format!("({}, {})", l.left, l.right)).collect();
        println!("{} word [{}] loops {}", s.bars_string(), r.word, loops.join(" "));
    }

    let space = StateSpace::new(b, GradingConvention::Printed)?;
    let pick = states[states.len() / 2];
    for e in space.enhanced_states().into_iter().filter(|e| e.state == pick) {
        let (h, q) = space.gradings(&e);
        println!("{e} at (h, q) = ({h}, {q})");
        for c in space.differential_components(&e) {
            println!("  crossing {}: {:?} {:?} -> {}", c.crossing, c.kind, c.coefficient, c.target);
        }
    }
    Ok(())
}
