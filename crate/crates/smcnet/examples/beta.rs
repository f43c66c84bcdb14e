//! Walk through the linear lambda-calculus theory: translate the beta
//! redex to a net, inspect it, and find the beta rule by bounded search.

use smcnet::{
    is_correct, net_to_dot, parse_term, parse_theory, theory_equal_bounded, translate, Verdict,
};

fn main() -> smcnet::Result<()> {
    let theory = parse_theory(
        "sort x\n\
         op lam : (x -o x) -> x\n\
         op app : x * x -> x\n\
         eq beta : app . (lam * id x) = eval x x\n",
    )?;
    let sig = &theory.signature;

    let redex = parse_term("app . (lam * id x)", sig)?;
    let net = translate(&redex, sig)?;
    println!("term: {redex}");
    println!("net:  {}", net.to_json_string());
    println!("correct: {}", is_correct(&net));

    let contractum = parse_term("eval x x", sig)?;
    match theory_equal_bounded(&redex, &contractum, &theory, 1)? {
        Verdict::Equal(trace) => {
            println!("equal modulo the theory, via:");
            for step in trace {
                let dir = if step.forward { "->" } else { "<-" };
                println!("  {} {}", step.equation, dir);
            }
        }
        Verdict::NotFoundWithinBound => println!("not found within the bound"),
    }

    print!("{}", net_to_dot(&net));
    Ok(())
}
