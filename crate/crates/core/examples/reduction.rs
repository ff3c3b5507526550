//! Reducing a form, then recovering an equivalence between two disguised
//! copies of it, marked and unmarked.
//!
//!     cargo run --example reduction

use cubic_twist::forms::{act_marked, equiv, equiv_marked, reduce};
use cubic_twist::{BinaryCubicForm, MarkedForm, Unimodular};

fn main() -> cubic_twist::Result<()> {
    for text in ["[1,5,26,142]", "[5,18,65,236]", "[2,1,-3,-1]", "[0,1,1,0]"] {
        let f: BinaryCubicForm = text.parse()?;
        let (red, g) = reduce(&f)?;
        println!("{f:>16} -> {red:<14} via {g}  (Delta = {})", f.discriminant());
    }

    let f: BinaryCubicForm = "[3,5,9,19]".parse()?;
    let g: Unimodular = "[[2,1],[7,4]]".parse()?;
    let h = f.act(&g);
    match equiv(&f, &h, 6)? {
        Some(w) => println!("{f} ~ {h} via {w}"),
        None => println!("{f} and {h}: no witness within radius 6"),
    }

    let marked = MarkedForm::new(f, 1, 0)?;
    let moved = act_marked(&marked, &g);
    println!("marked value {} is kept: {moved}", moved.value());
    if let Some(w) = equiv_marked(&marked, &moved, 6)? {
        println!("marked witness {w}");
    }
    Ok(())
}
