//! Shapes, declarations and the logic-signature check.
use abslogic::signature::{is_logic_signature, AbstractionDecl, Shape, Signature};
use abslogic::syntax::parse_shape;

fn main() {
    // `integral` binds one variable, visible only in its second argument.
    let integral = parse_shape("(1; {}, {0})").unwrap();
    println!("integral : {integral}  valence {} arity {}", integral.valence(), integral.arity());
    for i in 0..integral.arity() {
        println!("  argument {i} sees binders {:?}", integral.scope(i));
    }

    // A binder that no argument can see is rejected.
    println!("(1; {{}}) -> {:?}", Shape::new(1, vec![vec![]]).unwrap_err());

    let sig = Signature::new([
        AbstractionDecl::new("true", Shape::value()),
        AbstractionDecl::new("imp", Shape::operation(2)),
        AbstractionDecl::new("all", Shape::binder()),
    ])
    .unwrap();
    println!("logic signature: {}", is_logic_signature(&sig));
    let calc = sig.extend([AbstractionDecl::new("integral", integral)]).unwrap();
    for d in calc.decls() {
        println!("  {} : {}", d.name, d.shape);
    }
    println!("redeclaring imp: {}", sig.extend([AbstractionDecl::new("imp", Shape::value())]).unwrap_err());
}
