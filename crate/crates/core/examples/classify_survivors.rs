//! Classifies the resolution word of every survivor of `ft_n^k`.
//!
//!     cargo run --example classify_survivors -- 3 4

use torus_whittle::counting::{classify_survivor, SurvivorForm};
use torus_whittle::states::GradingConvention;
use torus_whittle::whittle::whittle;
use torus_whittle::BraidWord;

fn main() -> torus_whittle::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, k) = match args[..] {
        [n, k, ..] => (n, k),
        _ => (3, 4),
    };
    let w = whittle(&BraidWord::torus(n, k)?, GradingConvention::Printed)?;
    let (mut form1, mut form2, mut none) = (0, 0, 0);
    for e in w.all_survivors() {
        let word = &w.space.resolution(e.state).word;
        let label = match classify_survivor(word) {
            Some(SurvivorForm::Form1 { exponents, .. }) => {
                form1 += 1;
                format!("form1 exponents {exponents:?}")
            }
            Some(SurvivorForm::Form2 { path }) => {
                form2 += 1;
                format!("form2 in {} moves to {}", path.len(), path.end())
            }
            None => {
                none += 1;
                "unclassified".to_string()
            }
        };
        println!("{e:<24} {word:<20} {label}");
    }
    println!("form1 {form1}, form2 {form2}, unclassified {none}");
    Ok(())
}
