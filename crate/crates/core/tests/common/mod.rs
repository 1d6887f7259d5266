//! Strategies and property bodies shared by `properties` and `acceptance`.
#![allow(dead_code)]

use bethe_schubert::algebra::diffop::{rdet, DiffOp, NcRing};
use bethe_schubert::algebra::indicial::{indicial_at_infinity, Location};
use bethe_schubert::algebra::matrix::DenseMat;
use bethe_schubert::algebra::poly::Poly;
use bethe_schubert::algebra::ratfunc::RatFunc;
use bethe_schubert::algebra::scalar::{ratio, Rational, Ring};
use bethe_schubert::algebra::wronskian::wronskian;
use bethe_schubert::bethe::restricted_family;
use bethe_schubert::rep::module::build_tensor_evaluation;
use bethe_schubert::rep::partition::Partition;
use bethe_schubert::rep::singular::singular_space;
use bethe_schubert::rep::spec::ProblemSpec;
use bethe_schubert::schubert::{exponents_of, fundamental_operator, reconstruct_point_from_operator, CellChart, SchubertPoint};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type PropResult = Result<(), TestCaseError>;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

pub fn poly(max_len: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(rational(), 1..=max_len).prop_map(Poly::new)
}

/// Rational function with a monic denominator of degree ≤ 2.
pub fn ratfunc() -> impl Strategy<Value = RatFunc<Rational>> {
    (poly(3), prop::collection::vec(rational(), 0..=2)).prop_map(|(n, mut d)| {
        d.push(Rational::one());
        RatFunc::new(n, Poly::new(d)).expect("monic denominator")
    })
}

pub fn diffop() -> impl Strategy<Value = DiffOp<RatFunc<Rational>>> {
    prop::collection::vec(ratfunc(), 1..=3).prop_map(DiffOp::new)
}

/// Nonincreasing sequences with parts ≤ 3 and `N ∈ {2, 3}`.
pub fn partition() -> impl Strategy<Value = Partition> {
    (2usize..=3)
        .prop_flat_map(|n| prop::collection::vec(0usize..=3, n))
        .prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            let n = v.len();
            Partition::new(&v, n).expect("sorted")
        })
}

pub fn cell_point() -> impl Strategy<Value = SchubertPoint<Rational>> {
    partition().prop_flat_map(|lam| {
        let chart = CellChart::for_partition(&lam).expect("chart");
        let dim = chart.dim();
        prop::collection::vec(rational(), dim)
            .prop_map(move |c| SchubertPoint::new(chart.clone(), c).expect("shape"))
    })
}

pub fn wronskian_props((p, q, c): (Poly<Rational>, Poly<Rational>, Rational)) -> PropResult {
    let w = wronskian(&[p.clone(), q.clone()]).unwrap();
    let w_swapped = wronskian(&[q.clone(), p.clone()]).unwrap();
    prop_assert_eq!(&w, &(-&w_swapped));
    let sheared = &q + &p.scale(&c);
    prop_assert_eq!(&w, &wronskian(&[p, sheared]).unwrap());
    Ok(())
}

/// `∂ ∘ f = f ∂ + f'` and associativity of composition.
pub fn d_commutation((f, a, b, c): (RatFunc<Rational>, DiffOp<RatFunc<Rational>>, DiffOp<RatFunc<Rational>>, DiffOp<RatFunc<Rational>>)) -> PropResult {
    let lhs = DiffOp::d(1).nc_mul(&DiffOp::scalar(f.clone()));
    let rhs = DiffOp::new(vec![f.derivative(), f]);
    prop_assert_eq!(lhs, rhs);
    prop_assert_eq!(a.nc_mul(&b).nc_mul(&c), a.nc_mul(&b.nc_mul(&c)));
    Ok(())
}

pub fn square(n: usize) -> impl Strategy<Value = Vec<Vec<Poly<Rational>>>> {
    prop::collection::vec(prop::collection::vec(poly(3), n), n)
}

/// On commuting entries the row determinant is the determinant.
pub fn rdet_commutative(m: Vec<Vec<Poly<Rational>>>) -> PropResult {
    let r = rdet(&m, &Poly::one()).unwrap();
    let n = m.len();
    let d = DenseMat::from_rows(m.clone()).unwrap().det_ring();
    prop_assert_eq!(&r, &d);
    // constant specialization through the field determinant
    let at = Rational::from_i64(2);
    let num = DenseMat::from_fn(n, n, |i, j| m[i][j].eval(&at));
    let via_rref = num.det();
    prop_assert_eq!(r.eval(&at), via_rref);
    Ok(())
}

pub fn round_trip(p: SchubertPoint<Rational>) -> PropResult {
    let op = fundamental_operator(&p).unwrap();
    let back = reconstruct_point_from_operator(&op.cleared, &p.chart, 0.0).unwrap();
    prop_assert_eq!(&back.coords, &p.coords);
    // χ_∞(α) = ∏(α − d_i)
    let chi = indicial_at_infinity(&op.monic).unwrap().poly;
    let expect = p
        .chart
        .degrees
        .iter()
        .fold(Poly::one(), |acc, &d| &acc * &Poly::linear_root(Rational::from_i64(d as i64)));
    prop_assert_eq!(chi, expect);
    Ok(())
}

/// `N ∈ {2, 3}`, `n ≤ 3` copies of the vector representation at distinct
/// random points, and a random admissible `λ`.
pub fn small_tensor_spec() -> impl Strategy<Value = ProblemSpec> {
    (2usize..=3, 1usize..=3)
        .prop_flat_map(|(n_gl, n)| {
            (
                Just(n_gl),
                prop::collection::btree_set(-6i64..=6, n),
                prop::sample::select(bethe_schubert::rep::partition::partitions_of(n, n_gl)),
            )
        })
        .prop_map(|(n_gl, pts, lam)| {
            let v = Partition::new(&[1], n_gl).unwrap();
            let k = pts.len();
            ProblemSpec::new_tensor(n_gl, vec![v; k], lam, pts.into_iter().map(Rational::from_i64).collect()).unwrap()
        })
}

pub fn restricted_commute(spec: ProblemSpec) -> PropResult {
    let m = build_tensor_evaluation(&spec).unwrap();
    let s = singular_space(&m, &spec.lambda);
    let fam = restricted_family(&m, &s, &spec.q_poly()).unwrap();
    prop_assert!(fam.check_commutative().is_ok());
    Ok(())
}

/// `N ∈ {2, 3}`, distinct points with multiplicities, and the point of the
/// `λ = (n, 0, …)` cell with Wronskian `∏(u − b_s)^{m_s}`.
pub fn row_cell_point() -> impl Strategy<Value = (SchubertPoint<Rational>, Vec<(Rational, usize)>)> {
    (2usize..=3, prop::collection::btree_map(-5i64..=5, 1usize..=3, 1..=3)).prop_map(|(n_gl, roots)| {
        let roots: Vec<(Rational, usize)> = roots.into_iter().map(|(b, m)| (Rational::from_i64(b), m)).collect();
        let n: usize = roots.iter().map(|r| r.1).sum();
        let lam = Partition::row(n, n_gl);
        let chart = CellChart::for_partition(&lam).unwrap();
        // f_1^{(N−1)} is a multiple of q, f_i = u^{N−i} for i ≥ 2
        let mut f1 = Poly::from_roots(&roots);
        for _ in 1..n_gl {
            let c: Vec<Rational> = std::iter::once(Rational::zero())
                .chain(f1.coeffs().iter().enumerate().map(|(k, a)| a.clone() / Rational::from_i64(k as i64 + 1)))
                .collect();
            f1 = Poly::new(c);
        }
        let f1 = f1.monic().unwrap();
        let mut basis = vec![f1];
        basis.extend((1..n_gl).map(|i| Poly::monomial(Rational::one(), n_gl - 1 - i)));
        (SchubertPoint::from_basis(&chart, &basis, 0.0).unwrap(), roots)
    })
}

/// Exponent bookkeeping: `Σ_b (Σ e_b − N(N−1)/2) = n` and the exponents
/// at ∞ add up to `−n − N(N−1)/2`.
pub fn exponent_sum((p, roots): (SchubertPoint<Rational>, Vec<(Rational, usize)>)) -> PropResult {
    let n_gl = p.chart.n_gl as i64;
    let base = n_gl * (n_gl - 1) / 2;
    let op = fundamental_operator(&p).unwrap();
    let mut total = 0i64;
    for (b, m) in &roots {
        let e = exponents_of(&op, &Location::Point(b.clone()), 0.0).unwrap();
        prop_assert_eq!(e.iter().sum::<i64>() - base, *m as i64);
        total += e.iter().sum::<i64>() - base;
    }
    let inf = exponents_of(&op, &Location::Infinity, 0.0).unwrap();
    let n = p.chart.wronskian_degree() as i64;
    prop_assert_eq!(inf.iter().sum::<i64>(), -n - base);
    prop_assert_eq!(total + inf.iter().sum::<i64>(), -base);
    Ok(())
}

/// `N = 2`, one or two distinct points with multiplicities, `n ≤ 4`.
pub fn small_weyl_spec() -> impl Strategy<Value = ProblemSpec> {
    prop::collection::btree_map(-4i64..=4, 1usize..=2, 1..=2)
        .prop_flat_map(|pts| {
            let n: usize = pts.values().sum();
            (Just(pts), prop::sample::select(bethe_schubert::rep::partition::partitions_of(n, 2)))
        })
        .prop_map(|(pts, lam)| {
            let (b, m): (Vec<Rational>, Vec<usize>) = pts.into_iter().map(|(b, m)| (Rational::from_i64(b), m)).unzip();
            ProblemSpec::new_weyl(2, lam, b, m).unwrap()
        })
}

/// Every tuple `Λ` with `|λ^{(s)}| = n_s`.
pub fn all_lambda_lists(n_gl: usize, mults: &[usize]) -> Vec<Vec<Partition>> {
    mults.iter().fold(vec![Vec::new()], |acc, &m| {
        acc.into_iter()
            .flat_map(|prefix| {
                bethe_schubert::rep::partition::partitions_of(m, n_gl).into_iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p);
                    v
                })
            })
            .collect()
    })
}

/// The Weyl fiber splits into the intersections `Ω_{Λ,λ,b}`.
pub fn weyl_splits(spec: ProblemSpec) -> PropResult {
    use bethe_schubert::bethe::SpectrumOptions;
    use bethe_schubert::schubert::{fiber_via_bethe, FiberMode};
    let opts = SpectrumOptions::default();
    let weyl = fiber_via_bethe(&spec, FiberMode::Weyl, &opts).unwrap().count_with_multiplicity();
    let mut split = 0;
    for list in all_lambda_lists(spec.n_gl, &spec.mults) {
        let t = ProblemSpec::new_tensor(spec.n_gl, list, spec.lambda.clone(), spec.points.clone()).unwrap();
        split += fiber_via_bethe(&t, FiberMode::IrreducibleTensor, &opts).unwrap().count_with_multiplicity();
    }
    prop_assert_eq!(weyl, split);
    Ok(())
}
