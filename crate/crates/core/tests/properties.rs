use lzeros::abel::{build_state, tail_u, Evaluator};
use lzeros::arith::{gcd, primes_upto};
use lzeros::coefficients::hecke::HeckeCharParams;
use lzeros::coefficients::quadratic::HalfElt;
use lzeros::coefficients::{generate, tau_integers, DirichletCoefficients, ExactValues, Family};
use lzeros::gamma::{completed_r, log_gamma};
use lzeros::mp::dist;
use lzeros::{builtin_spec, Cx, LFunctionSpec, PrecisionContext};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer};
use std::sync::OnceLock;

fn npow(n: usize, s: &Cx) -> Cx {
    let ln = Float::with_val(s.prec(), n).ln();
    Cx::new(-(s.re.clone()) * &ln, -(s.im.clone()) * &ln).exp()
}

/// `u_n^(l)` by `l` forward differences of `n^-s`.
fn u_direct(n: usize, l: usize, s: &Cx) -> Cx {
    let mut row: Vec<Cx> = (n..=n + l).map(|k| npow(k, s)).collect();
    for _ in 0..l {
        row = row.windows(2).map(|w| w[0].sub(&w[1])).collect();
    }
    row.pop().unwrap()
}

fn integers(c: &DirichletCoefficients) -> &[Integer] {
    match c.exact.as_ref() {
        Some(ExactValues::Integers(v)) => v,
        _ => panic!("{} has no integer coefficients", c.family),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn levels_equal_summation_by_parts(
        coeffs in prop::collection::vec(-50i64..50, 100),
        n in 10usize..=100,
        l in 1usize..=6,
        re in 0.5f64..8.0,
        im in 0.0f64..60.0,
    ) {
        let ctx = PrecisionContext::new(40);
        let prec = ctx.bits();
        let ints: Vec<Integer> = coeffs.iter().map(|&a| Integer::from(a)).collect();
        let c = DirichletCoefficients::from_integers(Family::External("random".into()), ints, prec);
        let spec = LFunctionSpec { coeffs: c.clone(), ..builtin_spec(&"s8f".parse().unwrap(), 1, &ctx).unwrap() };
        let s = Cx::from_f64(prec, re, im);
        let ev = Evaluator::with_options(&spec, n, l, 0.0, 100, &ctx).unwrap();
        let (levels, _) = ev.levels(&s).unwrap();
        // S^(l) = sum_{m<=n} s_m^(l) u_m^(l) with s^(l) the l-fold partial sums
        let mut partial: Vec<Integer> = coeffs[..n].iter().map(|&a| Integer::from(a)).collect();
        for j in 0..=l {
            if j > 0 {
                for i in 1..n {
                    let prev = partial[i - 1].clone();
                    partial[i] += prev;
                }
            }
            let direct = (1..=n).fold(Cx::zero(prec), |acc, m| {
                acc.add(&u_direct(m, j, &s).scale(&Float::with_val(prec, &partial[m - 1])))
            });
            let scale = direct.abs().to_f64().max(1.0);
            prop_assert!(dist(&levels[j], &direct) <= 1e-26 * scale, "level {}", j);
        }
        let st = build_state(&c, n, l, 0.0, prec).unwrap();
        prop_assert_eq!(st.tops[l].re.to_f64(), partial[n - 1].to_f64());
    }

    #[test]
    fn tail_series_equals_forward_difference(
        m in 20usize..200,
        l in 1usize..=6,
        re in -4.0f64..10.0,
        im in 0.0f64..120.0,
    ) {
        let s = Cx::from_f64(256, re, im);
        let (u, bound) = tail_u(m, l, &s, 100).unwrap();
        let d = u_direct(m, l, &s);
        let scale = d.abs().to_f64();
        prop_assert!(dist(&u, &d) <= 1e-40 * scale + 2.0 * bound, "{} vs bound {}", dist(&u, &d), bound);
    }
}

fn euler_families() -> &'static Vec<DirichletCoefficients> {
    static C: OnceLock<Vec<DirichletCoefficients>> = OnceLock::new();
    C.get_or_init(|| {
        [
            Family::CuspS8,
            Family::Sym3Delta,
            Family::Sym4Delta,
            Family::ArtinS5,
            Family::HeckeChi { d: 2, n: 1, m: 0 },
            Family::HeckeChi { d: 5, n: 1, m: 1 },
        ]
        .iter()
        .map(|f| generate(f, 1000, 256).unwrap())
        .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn coprime_indices_multiply((x, y) in (1usize..=500).prop_flat_map(|x| (Just(x), 1usize..=1000 / x))) {
        prop_assume!(gcd(x as u64, y as u64) == 1);
        for c in euler_families() {
            let lhs = c.a(x * y);
            let rhs = c.a(x).mul(c.a(y));
            prop_assert!(dist(lhs, &rhs) <= 1e-60 * rhs.abs().to_f64().max(1.0), "{} at {} {}", c.family, x, y);
            if let Some(ExactValues::Integers(v)) = &c.exact {
                prop_assert_eq!(&v[x * y - 1], &Integer::from(&v[x - 1] * &v[y - 1]));
            }
        }
    }
}

/// Coefficient of `p^j` in `L(s, Sym^r Delta)`, summing `alpha^a beta^b`
/// over all size-`j` multisets of the roots `alpha^(r-i) beta^i`.
fn sym_prime_power(r: usize, j: usize, tau: &Integer, p: u64) -> Integer {
    // count[e] = multisets of size j from {0..r} with index sum e
    let mut count = vec![vec![Integer::new(); r * j + 1]; j + 1];
    count[0][0] = Integer::from(1);
    for i in 0..=r {
        for size in 1..=j {
            for e in i..=r * j {
                let add = count[size - 1][e - i].clone();
                count[size][e] += add;
            }
        }
    }
    // power sums alpha^m + beta^m by the trace recurrence
    let d = Integer::from(p).pow(11u32);
    let mut q = vec![Integer::from(2), tau.clone()];
    for m in 2..=r * j {
        let v = Integer::from(tau * &q[m - 1]) - Integer::from(&d * &q[m - 2]);
        q.push(v);
    }
    let total = r * j;
    let mut out = Integer::new();
    for e in 0..=total / 2 {
        let (a, b) = (total - e, e);
        let term = if a == b {
            Integer::from(d.clone().pow(b as u32))
        } else {
            Integer::from(d.clone().pow(b as u32)) * &q[a - b]
        };
        // the multiset count is symmetric: count[e] = count[total - e]
        out += Integer::from(&count[j][e] * &term);
    }
    out
}

fn sym_coeffs() -> &'static (Vec<Integer>, Vec<Integer>, Vec<Integer>) {
    static C: OnceLock<(Vec<Integer>, Vec<Integer>, Vec<Integer>)> = OnceLock::new();
    C.get_or_init(|| {
        let s3 = generate(&Family::Sym3Delta, 10000, 64).unwrap();
        let s4 = generate(&Family::Sym4Delta, 10000, 64).unwrap();
        (integers(&s3).to_vec(), integers(&s4).to_vec(), tau_integers(97))
    })
}

#[test]
fn multiset_oracle_reproduces_known_identities() {
    let t = Integer::from(-24);
    let d = Integer::from(2).pow(11u32);
    assert_eq!(sym_prime_power(1, 1, &t, 2), t);
    assert_eq!(sym_prime_power(3, 1, &t, 2), Integer::from(t.clone().pow(3u32)) - Integer::from(&d * &t) * 2);
    let s4 = Integer::from(t.clone().pow(4u32)) - Integer::from(&d * Integer::from(t.square_ref())) * 3 + Integer::from(d.square_ref());
    assert_eq!(sym_prime_power(4, 1, &t, 2), s4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn sym_prime_powers_match_multiset_sums(i in 0usize..25, r in 3usize..=4) {
        let p = primes_upto(97)[i];
        let (s3, s4, tau) = sym_coeffs();
        let c = if r == 3 { s3 } else { s4 };
        let mut pj = p as usize;
        let mut j = 1;
        while pj <= 10000 {
            let expect = sym_prime_power(r, j, &tau[p as usize - 1], p);
            prop_assert_eq!(&c[pj - 1], &expect, "Sym^{} at {}^{}", r, p, j);
            pj *= p as usize;
            j += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hecke_values_ignore_units(
        which in 0usize..4,
        a in -200i64..200,
        b in -200i64..200,
        power in -3i32..=3,
        negate: bool,
    ) {
        let (d, n, m) = [(2i64, 1i64, 0u8), (2, 1, 1), (5, 2, 1), (13, 1, 0)][which];
        let h = HeckeCharParams::new(d, n, m, 256).unwrap();
        let f = &h.field;
        let alpha = HalfElt { a: Integer::from(a), b: Integer::from(b) };
        prop_assume!(f.in_ring(&alpha) && alpha.norm(d) != 0);
        let step = if power >= 0 {
            f.eps.clone()
        } else {
            // eps^-1 = N(eps) conj(eps)
            let c = f.eps.conj();
            if f.norm_eps == 1 { c } else { HalfElt { a: Integer::from(-&c.a), b: Integer::from(-&c.b) } }
        };
        let mut beta = alpha.clone();
        for _ in 0..power.unsigned_abs() {
            beta = beta.mul(&step, d);
        }
        if negate {
            beta = HalfElt { a: Integer::from(-&beta.a), b: Integer::from(-&beta.b) };
        }
        prop_assert!(dist(&h.chi_of_element(&alpha), &h.chi_of_element(&beta)) < 1e-60);
    }

    #[test]
    fn log_gamma_recurrence(re in 0.05f64..60.0, im in -300.0f64..300.0) {
        let ctx = PrecisionContext::new(50);
        let z = Cx::from_f64(ctx.bits(), re, im);
        let mut z1 = z.clone();
        z1.re += 1u32;
        let lhs = log_gamma(&z1, &ctx).unwrap();
        let rhs = log_gamma(&z, &ctx).unwrap().add(&z.ln());
        prop_assert!(dist(&lhs, &rhs) < 1e-45 * (1.0 + rhs.abs().to_f64()));
    }
}

fn s8f_40() -> &'static (PrecisionContext, LFunctionSpec) {
    static C: OnceLock<(PrecisionContext, LFunctionSpec)> = OnceLock::new();
    C.get_or_init(|| {
        let ctx = PrecisionContext::new(40);
        let spec = builtin_spec(&"s8f".parse().unwrap(), 2000, &ctx).unwrap();
        (ctx, spec)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn completed_function_satisfies_reflection(dx in 0.1f64..1.0, t in 0.0f64..12.0) {
        let (ctx, spec) = s8f_40();
        let prec = ctx.bits();
        let ev = Evaluator::new(spec, 2000, 35, ctx).unwrap();
        let s = Cx::new(spec.center() + dx, Float::with_val(prec, t));
        // the reflection k - conj(s) computed in the working precision
        let r = Cx::new(Float::with_val(prec, Float::with_val(prec, &spec.k) - &s.re), s.im.clone());
        let rs = completed_r(spec, &s, &ev.l_value(&s).unwrap(), ctx).unwrap();
        let rr = completed_r(spec, &r, &ev.l_value(&r).unwrap(), ctx).unwrap();
        let resid = dist(&rr, &spec.kappa.mul(&rs.conj()));
        prop_assert!(resid < 10f64.powi(-(ctx.digits as i32 - 12)) * rs.abs().to_f64().max(1.0), "{}", resid);
    }

    #[test]
    fn real_coefficients_give_conjugate_values(t in 1.0f64..60.0) {
        let (ctx, spec) = s8f_40();
        let ev = Evaluator::new(spec, 2000, 35, ctx).unwrap();
        let s = spec.on_line(&Float::with_val(ctx.bits(), t));
        let up = ev.l_value(&s).unwrap();
        let down = ev.l_value(&s.conj()).unwrap();
        prop_assert!(dist(&down, &up.conj()) < 1e-20 * up.abs().to_f64().max(1.0), "{}", dist(&down, &up.conj()));
        let r = ev.eval_on_line(t).unwrap();
        // e^(i theta) L is real on the line up to the evaluation error
        prop_assert!(r.error_gauge.unwrap() < 1e-12, "{}", r.error_gauge.unwrap());
    }
}
