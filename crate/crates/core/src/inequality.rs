//! Determinant, majorization, log-convexity and ratio inequalities for `S(n,k)`.
//!
//! All of them concern the sequence `r_k(l) = S(l+k,k) / C(l+k,k)`, the
//! Taylor coefficients (times `l!`) of the absolutely monotonic `H_k`.

use num_integer::Integer as _;
use num_traits::{One, Signed};
use rand::Rng;

use crate::arith::{binomial, show, Integer, Rational, RationalMatrix};
use crate::engines::{Kind, StirlingTable};
use crate::report::{fields, Check, VerificationReport};
use crate::{Error, Result};

fn require(table: &StirlingTable, n: usize) -> Result<()> {
    if table.kind() != Kind::Second {
        return Err(Error::Validation("expected a second-kind table".into()));
    }
    if n > table.max_n() {
        return Err(Error::range("n", n, table.max_n()));
    }
    Ok(())
}

/// `S(l+k,k) / C(l+k,k)`.
pub fn ratio(table: &StirlingTable, l: usize, k: usize) -> Result<Rational> {
    require(table, l + k)?;
    Ok(Rational::new(
        table.get(l + k, k)?.clone(),
        binomial((l + k) as u64, k as u64),
    ))
}

/// Weights `q` with non-increasing tuples `a` and `b` of equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajorizationInstance {
    q: Vec<u64>,
    a: Vec<u64>,
    b: Vec<u64>,
}

impl MajorizationInstance {
    pub fn new(q: Vec<u64>, a: Vec<u64>, b: Vec<u64>) -> Result<Self> {
        if q.len() != a.len() || a.len() != b.len() {
            return Err(Error::Validation(format!(
                "q, a, b must have equal length (got {}, {}, {})",
                q.len(),
                a.len(),
                b.len()
            )));
        }
        for (name, t) in [("a", &a), ("b", &b)] {
            if t.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Validation(format!("{name} = {t:?} is not non-increasing")));
            }
        }
        Ok(MajorizationInstance { q, a, b })
    }

    pub fn q(&self) -> &[u64] {
        &self.q
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }
}

/// `a ⪰_q b`: weighted prefix sums of `a` dominate those of `b` and the totals agree.
pub fn check_q_majorization(inst: &MajorizationInstance) -> bool {
    let (mut sa, mut sb) = (0u64, 0u64);
    for i in 0..inst.len() {
        sa += inst.q[i] * inst.a[i];
        sb += inst.q[i] * inst.b[i];
        if i + 1 < inst.len() && sa < sb {
            return false;
        }
    }
    sa == sb
}

/// Generates a random instance with `a ⪰_q b` by construction.
///
/// `b` is drawn first; `a` is obtained from `b` by transfers that raise an
/// earlier entry and lower a later one by amounts with equal weighted size.
/// Each transfer raises the weighted prefix sums strictly between the two
/// positions and leaves the total unchanged.
pub fn random_majorization<R: Rng>(rng: &mut R, max_len: usize, max_entry: u64, max_q: u64) -> MajorizationInstance {
    let len = rng.gen_range(1..=max_len.max(1));
    let q: Vec<u64> = (0..len).map(|_| rng.gen_range(0..=max_q)).collect();
    let mut b: Vec<u64> = (0..len).map(|_| rng.gen_range(0..=max_entry)).collect();
    b.sort_unstable_by(|x, y| y.cmp(x));
    let mut a = b.clone();
    if len >= 2 {
        let steps = rng.gen_range(0..=2 * len);
        for _ in 0..steps {
            let i = rng.gen_range(0..len - 1);
            let j = rng.gen_range(i + 1..len);
            let (up, down) = match (q[i], q[j]) {
                (0, 0) => (1, 1),
                (0, _) => (1, 0),
                (_, 0) => (0, 1),
                (qi, qj) => {
                    let g = qi.gcd(&qj);
                    (qj / g, qi / g)
                }
            };
            let scale = rng.gen_range(1..=2);
            let (up, down) = (up * scale, down * scale);
            if a[j] < down || a[i] + up > max_entry {
                continue;
            }
            let mut next = a.clone();
            next[i] += up;
            next[j] -= down;
            if next.windows(2).all(|w| w[0] >= w[1]) {
                a = next;
            }
        }
    }
    let inst = MajorizationInstance::new(q, a, b).expect("construction keeps tuples non-increasing");
    debug_assert!(check_q_majorization(&inst));
    inst
}

/// Tuple `a` and order `k` of a Hankel-type matrix `[r_k(a_i + a_j)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelSpec {
    pub a: Vec<u64>,
    pub k: usize,
    /// Whether entry `(i,j)` carries the factor `(-1)^(a_i + a_j)`.
    pub signed: bool,
}

impl HankelSpec {
    pub fn new(a: Vec<u64>, k: usize, signed: bool) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Validation("Hankel tuple must be nonempty".into()));
        }
        if k == 0 {
            return Err(Error::Validation("k must be positive".into()));
        }
        Ok(HankelSpec { a, k, signed })
    }

    fn describe(&self) -> crate::report::Fields {
        fields([
            ("a", format!("{:?}", self.a)),
            ("k", self.k.to_string()),
            ("signed", self.signed.to_string()),
        ])
    }
}

pub fn hankel_matrix(table: &StirlingTable, spec: &HankelSpec) -> Result<RationalMatrix> {
    let top = 2 * *spec.a.iter().max().expect("nonempty") as usize;
    require(table, top + spec.k)?;
    let m = spec.a.len();
    let mut entries = Vec::with_capacity(m * m);
    for &ai in &spec.a {
        for &aj in &spec.a {
            let s = ai + aj;
            let mut v = ratio(table, s as usize, spec.k)?;
            if spec.signed && s % 2 == 1 {
                v = -v;
            }
            entries.push(v);
        }
    }
    RationalMatrix::new(m, entries)
}

/// `det [r_k(a_i + a_j)] >= 0`, optionally with the alternating sign factors.
pub fn check_det_nonneg(table: &StirlingTable, spec: &HankelSpec) -> Result<Check> {
    let det = hankel_matrix(table, spec)?.det();
    Ok(Check::new(!det.is_negative(), spec.describe(), fields([("det", show(&det))])))
}

/// Every tuple in `{0..=max_entry}^order` (all orderings, not just sorted ones).
pub fn all_tuples(order: usize, max_entry: u64) -> impl Iterator<Item = Vec<u64>> {
    let base = max_entry + 1;
    let count = base.pow(order as u32);
    (0..count).map(move |mut idx| {
        let mut t = vec![0; order];
        for slot in t.iter_mut().rev() {
            *slot = idx % base;
            idx /= base;
        }
        t
    })
}

/// `prod r_k(a_i)^{q_i} >= prod r_k(b_i)^{q_i}`, compared as
/// `P_a Q_b >= P_b Q_a` where `P/Q` are the integer numerator and denominator products.
pub fn check_product_inequality(table: &StirlingTable, inst: &MajorizationInstance, k: usize) -> Result<Check> {
    if !check_q_majorization(inst) {
        return Err(Error::Validation(format!(
            "a = {:?} does not q-majorize b = {:?} for q = {:?}",
            inst.a, inst.b, inst.q
        )));
    }
    let product = |t: &[u64]| -> Result<(Integer, Integer)> {
        let (mut num, mut den) = (Integer::one(), Integer::one());
        for (&x, &q) in t.iter().zip(&inst.q) {
            let r = ratio(table, x as usize, k)?;
            num *= num_traits::pow(r.numer().clone(), q as usize);
            den *= num_traits::pow(r.denom().clone(), q as usize);
        }
        Ok((num, den))
    };
    let (pa, qa) = product(&inst.a)?;
    let (pb, qb) = product(&inst.b)?;
    let holds = &pa * &qb >= &pb * &qa;
    Ok(Check::new(
        holds,
        fields([
            ("q", format!("{:?}", inst.q)),
            ("a", format!("{:?}", inst.a)),
            ("b", format!("{:?}", inst.b)),
            ("k", k.to_string()),
        ]),
        fields([
            ("lhs", show(&Rational::new(pa, qa))),
            ("rhs", show(&Rational::new(pb, qb))),
        ]),
    ))
}

/// `r(l) r(l+2) >= r(l+1)^2` for `0 <= l <= n_max - 2`.
///
/// Each instance also checks the equivalent statement that the consecutive
/// ratio `r(l+1)/r(l)` does not decrease, and fails if the two disagree.
pub fn check_log_convexity(table: &StirlingTable, k: usize, n_max: usize) -> Result<VerificationReport> {
    if k == 0 || n_max < 2 {
        return Err(Error::Validation(format!("need k >= 1 and n_max >= 2, got k = {k}, n_max = {n_max}")));
    }
    let r: Vec<Rational> = (0..=n_max).map(|l| ratio(table, l, k)).collect::<Result<_>>()?;
    let mut report = VerificationReport::new("log-convexity");
    for l in 0..=n_max - 2 {
        let product = &r[l] * &r[l + 2];
        let square = &r[l + 1] * &r[l + 1];
        let convex = product >= square;
        let ratios_nondecreasing = &r[l + 2] / &r[l + 1] >= &r[l + 1] / &r[l];
        report.push(Check::new(
            convex && ratios_nondecreasing,
            fields([("k", k), ("l", l)]),
            fields([
                ("product", show(&product)),
                ("square", show(&square)),
                ("ratio_form_agrees", (convex == ratios_nondecreasing).to_string()),
            ]),
        ));
    }
    Ok(report)
}

/// `S(n+1,k-1) S(n+1,k+1) / S(n+1,k)^2 < (k-1)(n-k+1) / ((k+1)(n-k+2))`, strictly.
pub fn check_sibuya(table: &StirlingTable, n: usize, k: usize) -> Result<Check> {
    if k < 2 || k > n {
        return Err(Error::Validation(format!("need 2 <= k <= n, got n = {n}, k = {k}")));
    }
    require(table, n + 1)?;
    let lower = table.get(n + 1, k - 1)?;
    let mid = table.get(n + 1, k)?;
    let upper = table.get(n + 1, k + 1)?;
    let lhs = lower * upper * Integer::from((k + 1) * (n - k + 2));
    let rhs = mid * mid * Integer::from((k - 1) * (n - k + 1));
    Ok(Check::new(
        lhs < rhs,
        fields([("n", n), ("k", k)]),
        fields([
            ("ratio", show(&Rational::new(lower * upper, mid * mid))),
            ("bound", show(&Rational::new(((k - 1) * (n - k + 1)).into(), ((k + 1) * (n - k + 2)).into()))),
        ]),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn table() -> StirlingTable {
        StirlingTable::second(40)
    }

    #[test]
    fn majorization_examples() {
        let inst = |q: &[u64], a: &[u64], b: &[u64]| MajorizationInstance::new(q.to_vec(), a.to_vec(), b.to_vec()).unwrap();
        assert!(check_q_majorization(&inst(&[1, 1], &[2, 0], &[1, 1])));
        assert!(check_q_majorization(&inst(&[1, 1], &[3, 1], &[3, 1])));
        assert!(!check_q_majorization(&inst(&[1, 1], &[1, 1], &[2, 0])));
        assert!(!check_q_majorization(&inst(&[1, 1], &[2, 1], &[1, 1])), "totals differ");
    }

    #[test]
    fn majorization_validates_order() {
        assert!(MajorizationInstance::new(vec![1, 1], vec![0, 2], vec![1, 1]).is_err());
        assert!(MajorizationInstance::new(vec![1], vec![0, 2], vec![1, 1]).is_err());
    }

    #[test]
    fn hankel_examples() {
        let t = table();
        let m = hankel_matrix(&t, &HankelSpec::new(vec![0], 3, false).unwrap()).unwrap();
        assert_eq!(m.get(0, 0), &rat_int(1));

        let m = hankel_matrix(&t, &HankelSpec::new(vec![0, 1], 1, false).unwrap()).unwrap();
        let expected = RationalMatrix::from_rows(vec![vec![rat(1, 1), rat(1, 2)], vec![rat(1, 2), rat(1, 3)]]).unwrap();
        assert_eq!(m, expected);

        let m = hankel_matrix(&t, &HankelSpec::new(vec![0, 1], 1, true).unwrap()).unwrap();
        let expected = RationalMatrix::from_rows(vec![vec![rat(1, 1), rat(-1, 2)], vec![rat(-1, 2), rat(1, 3)]]).unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn determinant_examples() {
        let t = table();
        for signed in [false, true] {
            let c = check_det_nonneg(&t, &HankelSpec::new(vec![0, 1], 1, signed).unwrap()).unwrap();
            assert!(c.passed);
            assert_eq!(c.witness["det"], "1/12");
        }
        let c = check_det_nonneg(&t, &HankelSpec::new(vec![3, 3, 3], 4, false).unwrap()).unwrap();
        assert!(c.passed);
        assert_eq!(c.witness["det"], "0");
    }

    #[test]
    fn tuples_cover_the_cube() {
        let all: Vec<_> = all_tuples(2, 2).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[5], vec![1, 2]);
        assert_eq!(all[8], vec![2, 2]);
    }

    #[test]
    fn product_examples() {
        let t = table();
        let inst = MajorizationInstance::new(vec![1, 1], vec![2, 0], vec![1, 1]).unwrap();
        let c = check_product_inequality(&t, &inst, 2).unwrap();
        assert!(c.passed);
        assert_eq!(c.witness["lhs"], "7/6");
        assert_eq!(c.witness["rhs"], "1");

        let same = MajorizationInstance::new(vec![2, 1, 3], vec![5, 2, 2], vec![5, 2, 2]).unwrap();
        let c = check_product_inequality(&t, &same, 3).unwrap();
        assert!(c.passed);
        assert_eq!(c.witness["lhs"], c.witness["rhs"]);

        let bad = MajorizationInstance::new(vec![1, 1], vec![1, 1], vec![2, 0]).unwrap();
        assert!(check_product_inequality(&t, &bad, 2).is_err());
    }

    #[test]
    fn random_instances_three_long() {
        let t = table();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let inst = random_majorization(&mut rng, 3, 8, 3);
            assert!(check_q_majorization(&inst));
            let k = rng.gen_range(1..=6);
            assert!(check_product_inequality(&t, &inst, k).unwrap().passed, "{inst:?} k={k}");
        }
    }

    #[test]
    fn generator_produces_nontrivial_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let distinct = (0..200)
            .map(|_| random_majorization(&mut rng, 4, 8, 3))
            .filter(|i| i.a() != i.b())
            .count();
        assert!(distinct > 50, "only {distinct} instances with a != b");
    }

    #[test]
    fn log_convexity_examples() {
        let t = table();
        // k = 1: r(l) = 1/(l+1)
        let r = check_log_convexity(&t, 1, 30).unwrap();
        assert!(r.passed());
        assert_eq!(r.instances, 29);

        let r = check_log_convexity(&t, 2, 2).unwrap();
        assert_eq!(r.instances, 1);
        assert!(r.passed());
        assert_eq!(ratio(&t, 0, 2).unwrap(), rat_int(1));
    }

    #[test]
    fn log_convexity_instance_agrees_with_product_form() {
        let t = table();
        for k in 1..=6 {
            let lc = check_log_convexity(&t, k, 12).unwrap();
            for l in 0..=10u64 {
                let inst = MajorizationInstance::new(vec![1, 1], vec![l + 2, l], vec![l + 1, l + 1]).unwrap();
                let p = check_product_inequality(&t, &inst, k).unwrap();
                assert!(p.passed);
                let both_pass = lc.failures.iter().all(|f| f.params["l"] != l.to_string());
                assert_eq!(p.passed, both_pass);
            }
        }
    }

    #[test]
    fn sibuya_examples() {
        let t = table();
        let c = check_sibuya(&t, 4, 2).unwrap();
        assert!(c.passed);
        assert_eq!(c.witness["ratio"], "1/9");
        assert_eq!(c.witness["bound"], "1/4");

        let c = check_sibuya(&t, 2, 2).unwrap();
        assert!(c.passed);
        assert_eq!(c.witness["ratio"], "1/9");
        assert_eq!(c.witness["bound"], "1/6");

        for k in 2..=10 {
            assert!(check_sibuya(&t, k, k).unwrap().passed);
        }
        assert!(check_sibuya(&t, 3, 1).is_err());
    }
}
