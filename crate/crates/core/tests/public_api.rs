use nilcent_core::centralizer::{sigma_split, GlCentralizer};
use nilcent_core::covectors::{alpha_gl, block_preserving_span, classify_so, SoCase, Weights};
use nilcent_core::exactlin::int;
use nilcent_core::indexcalc::{index, stabilizer, Covector};
use nilcent_core::jordan::{build_model, AlgebraKind, Partition};
use nilcent_core::lie::LieAlgebra;

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn abelian_index_is_dimension() {
    let g = LieAlgebra::from_fn("ab", (0..5).map(|i| format!("x{i}")).collect(), |_, _| {
        vec![int(0); 5]
    });
    assert_eq!(index(&g), 5);
    assert_eq!(stabilizer(&g, &Covector::zero(5)).unwrap().dim(), 5);
}

#[test]
fn gl_examples() {
    let gl = GlCentralizer::new(&part("2,1"));
    assert_eq!(index(&gl.algebra), 3);
    let alpha = alpha_gl(&gl, &Weights::default_gl(&gl.partition)).unwrap();
    let stab = stabilizer(&gl.algebra, &alpha).unwrap();
    assert_eq!(stab, block_preserving_span(&gl));
    assert_eq!(stab.dim(), 3);
}

#[test]
fn so8_subregular() {
    let model = build_model(&part("5,3"), AlgebraKind::Orthogonal).unwrap();
    let split = sigma_split(&model).unwrap();
    assert_eq!(split.z.dim(), 6);
    assert_eq!(index(&split.z), 4);
    assert_eq!(classify_so(&model.partition).unwrap(), SoCase::Case2);
}

#[test]
fn inadmissible_partitions_are_rejected() {
    assert!(build_model(&part("3"), AlgebraKind::Symplectic).is_err());
    assert!(build_model(&part("2"), AlgebraKind::Orthogonal).is_err());
    assert!("0,1".parse::<Partition>().is_err());
}
