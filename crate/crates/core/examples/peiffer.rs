//! Peiffer moves, triviality certificates and the exponent-sum obstruction.
use graphsc::identity::{
    exponent_imbalance, peiffer_apply, triviality_search, IdentityItem, IdentitySequence,
    PeifferMove, Triviality,
};
use graphsc::Word;

fn item(conj: &str, rel: &str, exp: i8) -> IdentityItem {
    IdentityItem::new(Word::parse(conj), Word::parse(rel), exp)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = item("a", "b b c", 1);
    let q = item("c", "a b^-1", -1);
    let seq = IdentitySequence::new(vec![p.clone(), q.clone(), q.inverse(), p.inverse()]);
    println!("start:\n{seq}");

    let moved = peiffer_apply(&seq, &PeifferMove::ExchangeLeft { position: 0 })?;
    println!("after exchange at 0:\n{moved}");
    assert_eq!(moved.product(), seq.product());

    match triviality_search(&moved, 10_000) {
        Triviality::Trivial(moves) => println!("trivial in {} moves: {moves:?}", moves.len()),
        Triviality::Unknown => println!("no certificate within budget"),
    }

    // Exponent sums per relator are Peiffer invariants.
    let intro = IdentitySequence::new(vec![
        item("", "a b^-1", 1),
        item("", "b c^-1", 1),
        item("", "a c^-1", -1),
    ]);
    for (r, sum) in exponent_imbalance(&intro) {
        println!("relator {r}: exponent sum {sum}");
    }
    Ok(())
}
