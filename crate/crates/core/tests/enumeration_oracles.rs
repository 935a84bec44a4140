use num_integer::Integer;
use platonic_geodesics::enumeration::{primitive_endpoints, LatticeKind};
use platonic_geodesics::scalar::integer;

fn totient(n: i64) -> i64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as i64
}

#[test]
fn primitive_count_in_the_ten_square() {
    let oracle = (1..=10i64)
        .flat_map(|p| (1..=10i64).map(move |q| (p, q)))
        .filter(|(p, q)| p.gcd(q) == 1)
        .count() as i64;
    assert_eq!(oracle, 2 * (1..=10).map(totient).sum::<i64>() - 1);
    let listed = primitive_endpoints(LatticeKind::Square, &integer(200))
        .into_iter()
        .filter(|e| (1..=10).contains(&e.p) && (1..=10).contains(&e.q))
        .count() as i64;
    assert_eq!(listed, oracle);
    assert_eq!(listed, 63);
}

#[test]
fn endpoints_match_a_brute_force_listing() {
    for lattice in [LatticeKind::Square, LatticeKind::Triangular] {
        for bound in [1, 5, 49, 300] {
            let mut oracle: Vec<(i64, i64, i64)> = (0..=bound)
                .flat_map(|p| (0..=bound).map(move |q| (p, q)))
                .filter(|&(p, q)| p.gcd(&q) == 1)
                .map(|(p, q)| {
                    let n = match lattice {
                        LatticeKind::Square => p * p + q * q,
                        LatticeKind::Triangular => p * p + p * q + q * q,
                    };
                    (n, p, q)
                })
                .filter(|&(n, _, _)| n <= bound)
                .collect();
            oracle.sort();
            let listed: Vec<(i64, i64, i64)> = primitive_endpoints(lattice, &integer(bound))
                .into_iter()
                .map(|e| (lattice.norm(e.p, e.q), e.p, e.q))
                .collect();
            assert_eq!(listed, oracle, "{lattice:?} bound {bound}");
        }
    }
}
