use diagramrep::diagram::{compose, enumerate, twisted_compose, Family, Partition, TwistedElement};
use diagramrep::rep::phi;
use diagramrep::semiring::Boolean;
use proptest::prelude::*;

fn partition(m: usize, n: usize) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0..(m + n).max(1), m + n)
        .prop_map(move |raw| Partition::from_raw_labels(m, n, &raw).unwrap())
}

/// Three composable diagrams of shapes (m,n), (n,t), (t,u).
fn chain() -> impl Strategy<Value = (Partition, Partition, Partition)> {
    (0..5usize, 0..5usize, 0..5usize, 0..5usize)
        .prop_flat_map(|(m, n, t, u)| (partition(m, n), partition(n, t), partition(t, u)))
}

fn pair() -> impl Strategy<Value = (Partition, Partition)> {
    (0..5usize, 0..5usize, 0..5usize).prop_flat_map(|(m, n, t)| (partition(m, n), partition(n, t)))
}

proptest! {
    #[test]
    fn associative((a, b, c) in chain()) {
        let ab = compose(&a, &b).unwrap();
        let bc = compose(&b, &c).unwrap();
        let left = compose(&ab.product, &c).unwrap();
        let right = compose(&a, &bc.product).unwrap();
        prop_assert_eq!(&left.product, &right.product);
        prop_assert_eq!(ab.floats + left.floats, bc.floats + right.floats);
    }

    #[test]
    fn twisted_associative((a, b, c) in chain(), i in 0..3u64, j in 0..3u64, k in 0..3u64) {
        let (x, y, z) = (TwistedElement::new(i, a), TwistedElement::new(j, b), TwistedElement::new(k, c));
        let left = twisted_compose(&twisted_compose(&x, &y, None).unwrap(), &z, None).unwrap();
        let right = twisted_compose(&x, &twisted_compose(&y, &z, None).unwrap(), None).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn involution_reverses((a, b) in pair()) {
        let ab = compose(&a, &b).unwrap();
        let ba = compose(&b.involution(), &a.involution()).unwrap();
        prop_assert_eq!(ab.product.involution(), ba.product);
        prop_assert_eq!(ab.floats, ba.floats);
        prop_assert_eq!(a.involution().involution(), a);
    }

    #[test]
    fn interchange((a, b) in pair(), (c, d) in pair()) {
        let ab = compose(&a, &b).unwrap();
        let cd = compose(&c, &d).unwrap();
        let whole = compose(&a.tensor_sum(&c), &b.tensor_sum(&d)).unwrap();
        prop_assert_eq!(whole.product, ab.product.tensor_sum(&cd.product));
        prop_assert_eq!(whole.floats, ab.floats + cd.floats);
    }

    #[test]
    fn regular((m, n) in (0..5usize, 0..5usize), seed in any::<u64>()) {
        let raw: Vec<u64> = (0..m + n).map(|v| seed.rotate_left(7 * v as u32) % 4).collect();
        let a = Partition::from_raw_labels(m, n, &raw).unwrap();
        let aa = compose(&a, &a.involution()).unwrap();
        prop_assert_eq!(compose(&aa.product, &a).unwrap().product, a);
    }

    #[test]
    fn phi_boolean_morphism((a, b) in pair()) {
        let ab = compose(&a, &b).unwrap();
        let lhs = phi(&a, &Boolean).unwrap().mat_mul(&phi(&b, &Boolean).unwrap()).unwrap();
        prop_assert_eq!(lhs, phi(&ab.product, &Boolean).unwrap());
        prop_assert_eq!(phi(&a.involution(), &Boolean).unwrap(), phi(&a, &Boolean).unwrap().transpose());
    }
}

#[test]
fn text_and_json_round_trip() {
    let mut seen = 0;
    for total in 0..=8 {
        for m in 0..=total {
            for a in enumerate(Family::Partition, m, total - m).unwrap() {
                let text = a.to_string();
                assert_eq!(text.parse::<Partition>().unwrap(), a, "{text}");
                let json = serde_json::to_string(&a).unwrap();
                assert_eq!(
                    serde_json::from_str::<Partition>(&json).unwrap(),
                    a,
                    "{json}"
                );
                seen += 1;
            }
        }
    }
    // Sum of Bell numbers B_0..B_8, each counted (k + 1) times.
    let bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140];
    let expected: usize = bell.iter().enumerate().map(|(k, b)| (k + 1) * b).sum();
    assert_eq!(seen, expected);
}
