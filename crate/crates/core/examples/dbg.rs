use meroconn::polysolve::*;
use meroconn::series::*;
use meroconn::scalars::*;

fn main() {
    let q = FieldDescriptor::rationals();
    let fe = |n: i64| FieldElement::from_integer(&q, n);
    let t2 = PuiseuxSeries::monomial(fe(1), Exp::new(2, 1));
    let p = SeriesPolynomial::from_coeffs(
        q.clone(),
        vec![
            t2.neg(),
            PuiseuxSeries::zero(&q),
            PuiseuxSeries::zero(&q),
            PuiseuxSeries::one(&q),
        ],
    );
    let roots = puiseux_roots(&p, Exp::new(5, 1)).unwrap();
    for r in &roots {
        println!("root: {}  mult {} certified {:?} field {}", r.value, r.multiplicity, r.certified, r.field);
    }
}
