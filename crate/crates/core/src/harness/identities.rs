use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Binding, Evaluation, IdentitySpec, IndexDecl, ParamDecl, Value};
use crate::arith::{binomial_row, int_pow, pow_i64, sign};
use crate::error::Result;
use crate::oracle::enumerate_rbpa_with_empty;
use crate::poly_bernoulli::{
    corollary_convolution, multi_poly_bernoulli, multi_poly_bernoulli_li_oracle, poly_bernoulli,
    poly_bernoulli_expanded, u_number, u_via_shift, w_family, MultiIndex,
};
use crate::rbpa::{
    last_digit, p_binomial_shift, p_crowded_sections, p_double_sum, p_egf, p_inclusion_exclusion,
    p_recurrence, p_recurrence_table, p_series_certified, rbpa_egf, two_minus_exp,
};
use crate::egf::TruncatedEgf;

fn p(name: &'static str, quick: std::ops::RangeInclusive<i64>, full: std::ops::RangeInclusive<i64>) -> ParamDecl {
    ParamDecl { name, quick, full }
}

fn n_default() -> ParamDecl {
    p("n", 0..=8, 0..=15)
}

fn n_from_one() -> ParamDecl {
    p("n", 1..=8, 1..=15)
}

fn n_max() -> ParamDecl {
    p("n_max", 8..=8, 15..=15)
}

fn index_decl() -> IndexDecl {
    IndexDecl { depth_quick: 1..=2, depth_full: 1..=4, entry_quick: 2, entry_full: 4 }
}

fn always(_: &Binding) -> bool {
    true
}

fn spec(
    id: &'static str,
    title: &'static str,
    statement: &'static str,
    lhs_by: &'static str,
    rhs_by: &'static str,
    params: Vec<ParamDecl>,
    eval: fn(&Binding) -> Result<Evaluation>,
) -> IdentitySpec {
    IdentitySpec { id, title, statement, lhs_by, rhs_by, diagnostic: false, params, index: None, valid: always, eval }
}

fn digits(values: &[BigInt]) -> Value {
    Value::Digits(values.iter().map(last_digit).collect())
}

// Σ_{s=from}^{n} C(n,s) f(s) g(n-s)
fn convolve(n: usize, from: usize, f: impl Fn(usize) -> BigInt, g: impl Fn(usize) -> BigInt) -> BigInt {
    let row = binomial_row(n as u64);
    (from..=n).map(|s| &row[s] * f(s) * g(n - s)).sum()
}

fn b2_zeros(b: usize) -> MultiIndex {
    MultiIndex::with_trailing_zeros(2, b)
}

pub(super) fn all() -> Vec<IdentitySpec> {
    vec![
        spec(
            "T3",
            "binomial shift",
            "p^r_j(n) = Σ_{s=0}^{n} C(n,s) r^s p^0_j(n-s)",
            "rbpa::p_egf",
            "rbpa::p_binomial_shift",
            vec![p("r", 1..=2, 1..=4), p("j", 0..=2, 0..=4), n_default()],
            |b| {
                let (r, j, n) = (b.u32("r"), b.u32("j"), b.usize("n"));
                Ok(Evaluation::new(p_egf(r, j, n).values[n].clone(), p_binomial_shift(r, j, n)))
            },
        ),
        spec(
            "L1",
            "powers repeat mod 10 with period 4",
            "s^{n+4} - s^n ≡ 0 (mod 10), n ≥ 1",
            "arith::int_pow",
            "constant",
            vec![p("s", 0..=20, 0..=50), p("n", 1..=8, 1..=20)],
            |b| {
                let (s, n) = (BigInt::from(b.int("s")), b.u32("n"));
                let diff = (int_pow(&s, n + 4) - int_pow(&s, n)) % BigInt::from(10);
                Ok(Evaluation::new(diff, BigInt::zero()))
            },
        ),
        IdentitySpec {
            valid: |b| b.int("r") + b.int("j") > 0,
            ..spec(
                "CYCLE_P",
                "last digit of p^r_j has a four cycle",
                "p^r_j(n+4) ≡ p^r_j(n) (mod 10), 1 ≤ n ≤ n_max",
                "rbpa::p_egf",
                "rbpa::p_recurrence_table",
                vec![p("r", 0..=2, 0..=5), p("j", 0..=2, 0..=5), n_max()],
                |b| {
                    let (r, j, top) = (b.u32("r"), b.u32("j"), b.usize("n_max"));
                    let shifted = p_egf(r, j, top + 4).values;
                    let base = p_recurrence_table(r, j, top);
                    Ok(Evaluation::new(digits(&shifted[5..=top + 4]), digits(&base[1..=top])))
                },
            )
        },
        spec(
            "DSUM_L",
            "alternating double sum over powers",
            "p^r_1(n) = Σ_{k≥0} Σ_{s=0}^{k} C(k,s)(-1)^s (k-s+r)^n",
            "rbpa::p_egf",
            "rbpa::p_double_sum",
            vec![p("r", 0..=2, 0..=4), n_default()],
            |b| {
                let (r, n) = (b.u32("r"), b.usize("n"));
                Ok(Evaluation::new(p_egf(r, 1, n).values[n].clone(), p_double_sum(r, 1, n)?)
                    .with_note(format!("outer sum cut at k={n}; terms k={}..={} vanish", n + 1, n + 3)))
            },
        ),
        spec(
            "DSUM_T",
            "alternating double sum over lower families",
            "p^r_j(n) = Σ_{k≥0} Σ_{s=0}^{k} C(k,s)(-1)^s p^{r+k-s}_{j-1}(n)",
            "rbpa::p_egf",
            "rbpa::p_double_sum",
            vec![p("r", 0..=2, 0..=4), p("j", 1..=2, 1..=4), n_default()],
            |b| {
                let (r, j, n) = (b.u32("r"), b.u32("j"), b.usize("n"));
                Ok(Evaluation::new(p_egf(r, j, n).values[n].clone(), p_double_sum(r, j, n)?)
                    .with_note(format!("outer sum cut at k={n}; terms k={}..={} vanish", n + 1, n + 3)))
            },
        ),
        IdentitySpec {
            diagnostic: true,
            valid: |b| b.int("r") <= b.int("j"),
            ..spec(
                "INCL_EXCL",
                "inclusion-exclusion over restricted sections",
                "p^r_{j-r}(n) = Σ_{s=1}^{r} C(r,s)(-1)^{s+1} p^s_{j-s}(n), 1 ≤ r ≤ j",
                "rbpa::p_egf",
                "rbpa::p_inclusion_exclusion",
                vec![p("r", 1..=2, 1..=4), p("j", 1..=2, 1..=4), n_default()],
                |b| {
                    let (r, j, n) = (b.u32("r"), b.u32("j"), b.usize("n"));
                    let rhs = p_inclusion_exclusion(r, j, n)?;
                    let complement = &p_egf(0, j, n).values[n] - &p_crowded_sections(r, j, n)?[n];
                    Ok(Evaluation::new(p_egf(r, j - r, n).values[n].clone(), rhs.clone()).with_alternative(
                        "\"sum counts G^0_j(n) with some fixed section holding at most one block\"",
                        rhs == complement,
                    ))
                },
            )
        },
        spec(
            "SER_L7",
            "geometric series for ordered set partitions",
            "p^0_1(n) = Σ_{s≥0} s^n / 2^{s+1}",
            "rbpa::p_egf",
            "rbpa::p_series_certified",
            vec![n_default()],
            |b| series_eval(0, 1, b.usize("n")),
        ),
        spec(
            "SER_L8",
            "geometric series with two restricted sections",
            "p^2_1(n) = 2 Σ_{s≥2} s^n / 2^s",
            "rbpa::p_egf",
            "rbpa::p_series_certified",
            vec![n_default()],
            |b| series_eval(2, 1, b.usize("n")),
        ),
        spec(
            "SER_T",
            "geometric series over lower families",
            "p^r_j(n) = ½ Σ_{s≥0} p^{r+s}_{j-1}(n) / 2^s",
            "rbpa::p_egf",
            "rbpa::p_series_certified",
            vec![p("r", 0..=2, 0..=4), p("j", 1..=2, 1..=4), n_default()],
            |b| series_eval(b.u32("r"), b.u32("j"), b.usize("n")),
        ),
        spec(
            "REC_L10",
            "ordered set partition recurrence",
            "p^0_1(n) = Σ_{s=1}^{n-1} C(n,s) p^0_1(n-s) + 1, n ≥ 1",
            "rbpa::p_egf",
            "recurrence_sum[rbpa::p_double_sum]",
            vec![n_from_one()],
            |b| {
                let n = b.usize("n");
                let row = binomial_row(n as u64);
                let mut rhs = BigInt::one();
                for s in 1..n {
                    rhs += &row[s] * p_double_sum(0, 1, n - s)?;
                }
                Ok(Evaluation::new(p_egf(0, 1, n).values[n].clone(), rhs))
            },
        ),
        IdentitySpec {
            diagnostic: true,
            ..spec(
                "REC_L11",
                "recurrence with two restricted sections",
                "p^2_1(n+1) = Σ_{s=0}^{n} C(n+1,s) p^2_1(s) + 2^{n+1}",
                "rbpa::p_egf",
                "recurrence_sum[rbpa::p_double_sum]",
                vec![n_default()],
                |b| {
                    let n = b.usize("n");
                    let row = binomial_row(n as u64 + 1);
                    let mut rhs = pow_i64(2, n as u32 + 1);
                    for s in 0..=n {
                        rhs += &row[s] * p_double_sum(2, 1, s)?;
                    }
                    Ok(Evaluation::new(p_egf(2, 1, n + 1).values[n + 1].clone(), rhs)
                        .with_note("index range taken as transcribed"))
                },
            )
        },
        spec(
            "REC_T",
            "recurrence on free sections",
            "p^r_j(n) = p^r_{j-1}(n) + Σ_{s=0}^{n-1} C(n,s) p^r_j(s)",
            "rbpa::p_egf",
            "rbpa::p_recurrence",
            vec![p("r", 0..=2, 0..=4), p("j", 1..=2, 1..=4), n_default()],
            |b| {
                let (r, j, n) = (b.u32("r"), b.u32("j"), b.usize("n"));
                Ok(Evaluation::new(p_egf(r, j, n).values[n].clone(), p_recurrence(r, j, n)))
            },
        ),
        spec(
            "EQ3",
            "closed form of B^{-2}",
            "B^{-2}_n = 2·3^n - 2^n",
            "poly_bernoulli::poly_bernoulli",
            "poly_bernoulli::w_family",
            vec![p("n", 0..=8, 0..=30)],
            |b| {
                let n = b.usize("n");
                Ok(Evaluation::new(poly_bernoulli(-2, n), w_family(3, n)?))
            },
        ),
        spec(
            "LEMMA_BJ",
            "expanded sum for B^k_n",
            "B^k_n = Σ_{s≥0} (s+1)^{-k} Σ_{i=0}^{s} C(s,i)(-1)^{s-i}(i-s)^n",
            "poly_bernoulli::poly_bernoulli",
            "poly_bernoulli::poly_bernoulli_expanded",
            vec![p("k", -2..=2, -4..=4), n_default()],
            |b| {
                let (k, n) = (b.int("k"), b.usize("n"));
                Ok(Evaluation::new(poly_bernoulli(k, n), poly_bernoulli_expanded(k, n))
                    .with_note(format!("outer sum cut at s={}", n + 3)))
            },
        ),
        spec(
            "RECIP_W",
            "reciprocal of e^{rm}/(2-e^m)",
            "(-1)^n [m^n/n!] (2-e^m) e^{-rm} = 2 r^n - (r-1)^n",
            "egf::reciprocal",
            "poly_bernoulli::w_family",
            vec![p("r", 1..=4, 1..=6), n_default()],
            |b| {
                let (r, n) = (b.u32("r"), b.usize("n"));
                let recip = rbpa_egf(r, 1, n).reciprocal()?;
                let lhs = recip.coeff_int(n)? * sign(n as u64);
                Ok(Evaluation::new(lhs, w_family(r, n)?))
            },
        ),
        IdentitySpec {
            valid: |b| b.int("r") >= 3,
            ..spec(
                "EQ5",
                "convolution with B^{-2} lowers r by 3 and j by 1",
                "p^{r-3}_{j-1}(n) = Σ_{s=0}^{n} C(n,s)(-1)^s B^{-2}_s p^r_j(n-s), r ≥ 3, j ≥ 1",
                "rbpa::p_egf",
                "convolution[poly_bernoulli, rbpa::p_recurrence]",
                vec![p("r", 3..=5, 3..=6), p("j", 1..=2, 1..=3), n_default()],
                |b| {
                    let (r, j, n) = (b.u32("r"), b.u32("j"), b.usize("n"));
                    let rec = p_recurrence_table(r, j, n);
                    let rhs = convolve(
                        n,
                        0,
                        |s| poly_bernoulli(-2, s).to_integer() * sign(s as u64),
                        |t| rec[t].clone(),
                    );
                    Ok(Evaluation::new(p_egf(r - 3, j - 1, n).values[n].clone(), rhs))
                },
            )
        },
        spec(
            "EQ6",
            "p^3_1 from its reciprocal",
            "p^3_1(n) = Σ_{s=1}^{n} C(n,s)(-1)^{s+1} B^{-2}_s p^3_1(n-s), n ≥ 1",
            "rbpa::p_egf",
            "convolution[poly_bernoulli, rbpa::p_recurrence]",
            vec![n_from_one()],
            |b| {
                let n = b.usize("n");
                let rec = p_recurrence_table(3, 1, n);
                let rhs = convolve(
                    n,
                    1,
                    |s| poly_bernoulli(-2, s).to_integer() * sign(s as u64 + 1),
                    |t| rec[t].clone(),
                );
                Ok(Evaluation::new(p_egf(3, 1, n).values[n].clone(), rhs))
            },
        ),
        spec(
            "EQ7",
            "closed form of B^{(-2,0,…,0)}",
            "B^{(-2,0^b)}_n = 2(3+b)^n - (2+b)^n",
            "poly_bernoulli::multi_poly_bernoulli",
            "poly_bernoulli::w_family",
            vec![p("b", 0..=2, 0..=5), p("n", 0..=8, 0..=20)],
            |b| {
                let (zeros, n) = (b.usize("b"), b.usize("n"));
                Ok(Evaluation::new(multi_poly_bernoulli(&b2_zeros(zeros), n), w_family(3 + zeros as u32, n)?))
            },
        ),
        spec(
            "EQ8",
            "p^{3+b}_1 from its reciprocal",
            "p^{3+b}_1(n) = Σ_{s=1}^{n} C(n,s)(-1)^{s+1} B^{(-2,0^b)}_s p^{3+b}_1(n-s), n ≥ 1",
            "rbpa::p_egf",
            "convolution[poly_bernoulli::multi_poly_bernoulli, rbpa::p_recurrence]",
            vec![p("b", 0..=2, 0..=3), n_from_one()],
            |b| {
                let (zeros, n) = (b.usize("b"), b.usize("n"));
                let r = 3 + zeros as u32;
                let rec = p_recurrence_table(r, 1, n);
                let idx = b2_zeros(zeros);
                let rhs = convolve(n, 1, |s| multi_poly_bernoulli(&idx, s) * sign(s as u64 + 1), |t| rec[t].clone());
                Ok(Evaluation::new(p_egf(r, 1, n).values[n].clone(), rhs))
            },
        ),
        IdentitySpec {
            valid: |b| b.int("r") >= 3 + b.int("b"),
            ..spec(
                "EQ9",
                "convolution with W lowers r by 3+b and j by 1",
                "p^{r-(3+b)}_{j-1}(n) = Σ_{s=0}^{n} C(n,s) p^r_j(s)(-1)^{n-s} B^{(-2,0^b)}_{n-s}, r ≥ 3+b, j ≥ 1",
                "rbpa::p_egf",
                "convolution[rbpa::p_recurrence, poly_bernoulli::w_family]",
                vec![p("r", 3..=5, 3..=6), p("j", 1..=2, 1..=3), p("b", 0..=2, 0..=3), n_default()],
                |b| {
                    let (r, j, zeros, n) = (b.u32("r"), b.u32("j"), b.u32("b"), b.usize("n"));
                    let rec = p_recurrence_table(r, j, n);
                    let rhs = convolve(
                        n,
                        0,
                        |s| rec[s].clone(),
                        |t| w_family(3 + zeros, t).expect("base >= 3") * sign(t as u64),
                    );
                    Ok(Evaluation::new(p_egf(r - 3 - zeros, j - 1, n).values[n].clone(), rhs))
                },
            )
        },
        IdentitySpec {
            diagnostic: true,
            ..spec(
                "EQ11B_SIGN",
                "generating function of B^{(-2,0^b)} as (2-e^m)/e^{(3+b)m}",
                "B^{(-2,0^b)}_n = [m^n/n!] (2-e^m) e^{-(3+b)m}",
                "poly_bernoulli::multi_poly_bernoulli",
                "egf::mul",
                vec![p("b", 0..=2, 0..=4), n_default()],
                |b| {
                    let (zeros, n) = (b.usize("b"), b.usize("n"));
                    let series = two_minus_exp(n).mul(&TruncatedEgf::exp_linear(-(3 + zeros as i64), n))?;
                    let rhs = series.coeff_int(n)?;
                    let lhs = multi_poly_bernoulli(&b2_zeros(zeros), n);
                    let flipped = &rhs * sign(n as u64) == lhs;
                    Ok(Evaluation::new(lhs, rhs).with_alternative("\"equal up to the factor (-1)^n\"", flipped))
                },
            )
        },
        IdentitySpec {
            index: Some(index_decl()),
            ..spec(
                "MU_LI",
                "μ recursion against the Li expansion",
                "Σ_{s=1}^{j} μ_s (s+b)^n = n![m^n] Σ_{0<s_1<…<s_b} s_1^{j_1}⋯s_b^{j_b} (1-e^{-m})^{s_b-b}",
                "poly_bernoulli::multi_poly_bernoulli",
                "poly_bernoulli::multi_poly_bernoulli_li_oracle",
                vec![p("n", 0..=8, 0..=10)],
                |b| {
                    let n = b.usize("n");
                    Ok(Evaluation::new(multi_poly_bernoulli(b.index(), n), multi_poly_bernoulli_li_oracle(b.index(), n)))
                },
            )
        },
        spec(
            "ZERO_INDEX",
            "all-zero index",
            "B^{(0^b)}_n = b^n",
            "poly_bernoulli::multi_poly_bernoulli_li_oracle",
            "arith::int_pow",
            vec![p("b", 1..=2, 1..=5), n_default()],
            |b| {
                let (depth, n) = (b.usize("b"), b.usize("n"));
                Ok(Evaluation::new(
                    multi_poly_bernoulli_li_oracle(&MultiIndex::zeros(depth), n),
                    pow_i64(depth as i64, n as u32),
                ))
            },
        ),
        spec(
            "COR",
            "trailing zeros act as a binomial convolution",
            "B^{(-j,0^{b-1})}_n = Σ_{s=0}^{n} C(n,s) B^{(0^{b-1})}_s B^{-j}_{n-s}",
            "poly_bernoulli::multi_poly_bernoulli",
            "poly_bernoulli::corollary_convolution",
            vec![p("j", 0..=2, 0..=4), p("b", 1..=2, 1..=4), n_default()],
            |b| {
                let (j, depth, n) = (b.u32("j"), b.usize("b"), b.usize("n"));
                Ok(Evaluation::new(
                    multi_poly_bernoulli(&MultiIndex::with_trailing_zeros(j, depth - 1), n),
                    corollary_convolution(j, depth, n)?,
                ))
            },
        ),
        spec(
            "CYCLE_B2",
            "last digit of B^{(-2,0^b)} has a four cycle",
            "B^{(-2,0^b)}_{n+4} ≡ B^{(-2,0^b)}_n (mod 10), 1 ≤ n ≤ n_max",
            "poly_bernoulli::multi_poly_bernoulli",
            "poly_bernoulli::w_family",
            vec![p("b", 0..=2, 0..=5), n_max()],
            |b| {
                let (zeros, top) = (b.usize("b"), b.usize("n_max"));
                let idx = b2_zeros(zeros);
                let shifted: Vec<BigInt> = (5..=top + 4).map(|n| multi_poly_bernoulli(&idx, n)).collect();
                let base = (1..=top).map(|n| w_family(3 + zeros as u32, n)).collect::<Result<Vec<_>>>()?;
                Ok(Evaluation::new(digits(&shifted), digits(&base)))
            },
        ),
        IdentitySpec {
            index: Some(index_decl()),
            ..spec(
                "CYCLE_BMULTI",
                "last digit of negative-index B has a four cycle",
                "B^{(-j_1,…,-j_b)}_{n+4} ≡ B^{(-j_1,…,-j_b)}_n (mod 10), 1 ≤ n ≤ n_max",
                "poly_bernoulli::multi_poly_bernoulli",
                "poly_bernoulli::multi_poly_bernoulli_li_oracle",
                vec![n_max()],
                |b| {
                    let top = b.usize("n_max");
                    let idx = b.index();
                    let shifted: Vec<BigInt> = (5..=top + 4).map(|n| multi_poly_bernoulli(idx, n)).collect();
                    let base: Vec<BigInt> = (1..=top).map(|n| multi_poly_bernoulli_li_oracle(idx, n)).collect();
                    Ok(Evaluation::new(digits(&shifted), digits(&base)))
                },
            )
        },
        IdentitySpec {
            index: Some(index_decl()),
            ..spec(
                "CYCLE_U",
                "last digit of negative-index U has a four cycle",
                "U^{(-j_1,…,-j_b)}_{n+4} ≡ U^{(-j_1,…,-j_b)}_n (mod 10), 1 ≤ n ≤ n_max",
                "poly_bernoulli::u_number",
                "poly_bernoulli::u_via_shift",
                vec![n_max()],
                |b| {
                    let top = b.usize("n_max");
                    let idx = b.index();
                    let shifted: Vec<BigInt> = (5..=top + 4).map(|n| u_number(idx, n).to_integer()).collect();
                    let base: Vec<BigInt> = (1..=top).map(|n| u_via_shift(idx, n).to_integer()).collect();
                    Ok(Evaluation::new(digits(&shifted), digits(&base)))
                },
            )
        },
        IdentitySpec {
            valid: |b| b.int("i") < b.int("jj") && b.int("jj") <= 4 + b.int("b"),
            ..spec(
                "INTERP",
                "B^{(-2,0^b)} counts all-restricted arrangements with section i or jj empty",
                "#{3+b bars, all sections restricted, section i or jj empty} = B^{(-2,0^b)}_n",
                "oracle::enumerate_rbpa_with_empty",
                "poly_bernoulli::multi_poly_bernoulli",
                vec![p("b", 0..=2, 0..=2), p("i", 1..=6, 1..=6), p("jj", 1..=6, 1..=6), p("n", 0..=6, 0..=6)],
                |b| {
                    let (zeros, i, jj, n) = (b.usize("b"), b.usize("i"), b.usize("jj"), b.usize("n"));
                    let lhs = enumerate_rbpa_with_empty(n, 3 + zeros, i, jj)?;
                    let shifted = w_family(4 + zeros as u32, n)?;
                    let note = format!(
                        "{} sections; count {} W_{}(n) = {shifted}",
                        4 + zeros,
                        if lhs == shifted { "matches" } else { "differs from" },
                        4 + zeros
                    );
                    Ok(Evaluation::new(lhs, multi_poly_bernoulli(&b2_zeros(zeros), n)).with_note(note))
                },
            )
        },
        IdentitySpec {
            index: Some(IndexDecl { depth_quick: 1..=2, depth_full: 1..=4, entry_quick: 2, entry_full: 4 }),
            ..spec(
                "T3B",
                "finite Stirling sum for U",
                "U^{(k_1,…,k_b)}_n = (-1)^{n+1} Σ_{s_b=b}^{n+b} Σ_{0<s_1<…<s_b} (s_1^{k_1}⋯s_b^{k_b})^{-1} (-1)^{s_b-b+1} (s_b-b)! {n+1 brace s_b-b+1}",
                "poly_bernoulli::u_number",
                "poly_bernoulli::u_via_shift",
                vec![p("n", 0..=8, 0..=10)],
                |b| {
                    let n = b.usize("n");
                    Ok(Evaluation::new(u_number(b.index(), n), u_via_shift(b.index(), n)))
                },
            )
        },
        IdentitySpec {
            diagnostic: true,
            ..spec(
                "UREL",
                "U^{(-2,0^b)} against B^{(-2,0^{b+1})}",
                "U^{(-2,0^b)}_n = B^{(-2,0^{b+1})}_n",
                "poly_bernoulli::u_number",
                "poly_bernoulli::multi_poly_bernoulli",
                vec![p("b", 0..=2, 0..=4), n_default()],
                |b| {
                    let (zeros, n) = (b.usize("b"), b.usize("n"));
                    let lhs = u_number(&b2_zeros(zeros), n);
                    let alt = w_family(2 + zeros as u32, n)?;
                    let holds = lhs.is_integer() && lhs.to_integer() == alt;
                    Ok(Evaluation::new(lhs, multi_poly_bernoulli(&b2_zeros(zeros + 1), n))
                        .with_alternative("\"U^{(-2,0^b)}_n = W_{2+b}(n)\"", holds))
                },
            )
        },
        IdentitySpec {
            diagnostic: true,
            ..spec(
                "EQ13",
                "p^{4+b}_1 from U^{(-2,0^b)}",
                "p^{4+b}_1(n) = Σ_{s=1}^{n} C(n,s)(-1)^{s+1} U^{(-2,0^b)}_s p^{4+b}_1(n-s), n ≥ 1",
                "rbpa::p_egf",
                "convolution[poly_bernoulli::u_number, rbpa::p_recurrence]",
                vec![p("b", 0..=2, 0..=3), n_from_one()],
                |b| {
                    let (zeros, n) = (b.usize("b"), b.usize("n"));
                    let r = 4 + zeros as u32;
                    let rec = p_recurrence_table(r, 1, n);
                    let idx = b2_zeros(zeros);
                    let with_u = convolve(n, 1, |s| u_number(&idx, s).to_integer() * sign(s as u64 + 1), |t| rec[t].clone());
                    let wider = b2_zeros(zeros + 1);
                    let with_b =
                        convolve(n, 1, |s| multi_poly_bernoulli(&wider, s) * sign(s as u64 + 1), |t| rec[t].clone());
                    let lhs = p_egf(r, 1, n).values[n].clone();
                    let holds = with_b == lhs;
                    Ok(Evaluation::new(lhs, with_u)
                        .with_alternative("\"U^{(-2,0^b)} replaced by B^{(-2,0^{b+1})}\"", holds))
                },
            )
        },
    ]
}

fn series_eval(r: u32, j: u32, n: usize) -> Result<Evaluation> {
    let (value, cert) = p_series_certified(r, j, n)?;
    Ok(Evaluation::new(p_egf(r, j, n).values[n].clone(), value).with_note(format!(
        "truncated at s={}, tail < {}",
        cert.truncation, cert.tail_bound
    )))
}
