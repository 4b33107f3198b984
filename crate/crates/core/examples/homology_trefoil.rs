//! Integer Khovanov homology of a torus link closure, with the graded Euler
//! characteristic checked against the state sum.
//!
//!     cargo run --example homology_trefoil -- 2 3

use torus_whittle::homology::{close_and_build, euler_state_sum, homology, EulerSum};
use torus_whittle::states::GradingConvention;
use torus_whittle::BraidWord;

fn main() -> torus_whittle::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, k) = match args[..] {
        [n, k, ..] => (n, k),
        _ => (2, 3),
    };
    let b = BraidWord::torus(n, k)?;
    let complex = close_and_build(&b, GradingConvention::Printed)?;
    complex.check_square_zero()?;
    let h = homology(&complex);
    println!("closure of {b}: {} generators", complex.total_dimension());
    for s in h.slices.iter().filter(|s| s.rank > 0 || !s.torsion.is_empty()) {
        let torsion: Vec<String> = s.torsion.iter().map(|t| format!("Z/{t}")).collect();
        println!("  H^{},{} = Z^{} {}", s.h, s.q, s.rank, torsion.join(" "));
    }
    println!("graded Euler characteristic {}", h.graded_euler());
    if let EulerSum::Closed(p) = euler_state_sum(&b, true, GradingConvention::Printed)? {
        println!("state sum                   {p} ({})", if p == h.graded_euler() { "equal" } else { "DIFFERENT" });
    }
    Ok(())
}
