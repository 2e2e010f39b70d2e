use num_bigint::BigInt;

use super::corpus::corpus_entry;
use super::VerificationReport;
use crate::zpoly::IntPoly;

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

/// `(z^2 + 6z + 4)^3 - (z^2 + 1)(z^2 + 9z + 19)^2 = -27 (2z + 11)` as a
/// polynomial identity in `z`.
pub fn danilov_cubic_identity() -> VerificationReport {
    let mut report = VerificationReport::new("danilov-cubic");
    let x = p(&[4, 6, 1]);
    let y = p(&[19, 9, 1]);
    let lhs = &(&(&x * &x) * &x) - &(&p(&[1, 0, 1]) * &(&y * &y));
    let expected = p(&[-297, -54]);
    report.check("(z^2+6z+4)^3 - (z^2+1)(z^2+9z+19)^2 = -54z - 297", lhs == expected, lhs.to_text("z"));
    for (z0, value) in [(0, -297), (1, -351)] {
        let got = lhs.eval(&BigInt::from(z0));
        report.check(format!("z = {z0} gives {value}"), got == BigInt::from(value), got.to_string());
    }
    report
}

/// `(27z + 7)^4 - (81z + 20)^2 ((81z + 22)^2 + 2) / 81 = 4z + 1`, with the
/// division by 81 done coefficientwise and exactly.
pub fn danilov_quartic_identity() -> VerificationReport {
    let mut report = VerificationReport::new("danilov-quartic");
    let inner = &(&p(&[22, 81]) * &p(&[22, 81])) + &p(&[2]);
    let quotient = match inner.div_exact_int(&BigInt::from(81)) {
        Ok(q) => q,
        Err(e) => {
            report.check("((81z+22)^2 + 2) / 81 exact", false, e.to_string());
            return report;
        }
    };
    report.check("((81z+22)^2 + 2) / 81 = 81z^2 + 44z + 6", quotient == p(&[6, 44, 81]), quotient.to_text("z"));
    let a = p(&[7, 27]);
    let b = p(&[20, 81]);
    let lhs = &(&(&a * &a) * &(&a * &a)) - &(&(&b * &b) * &quotient);
    report.check("identity equals 4z + 1", lhs == p(&[1, 4]), lhs.to_text("z"));
    let at0 = lhs.eval(&BigInt::from(0));
    report.check("z = 0 gives 1", at0 == BigInt::from(1), at0.to_string());
    report
}

/// Checks the stored quartic example at `k = 3`:
/// `x^4 - (t^2 + 2) y^2` equals the stored degree-7 polynomial.
pub fn verify_quartic_k3() -> VerificationReport {
    let mut report = VerificationReport::new("quartic-k3");
    let entry = match corpus_entry("quartic_k3") {
        Ok(e) => e,
        Err(e) => {
            report.check("load corpus entry", false, e.to_string());
            return report;
        }
    };
    let (x, y, stored) = (entry.x.num(), entry.y.num(), entry.d.num());
    let k = 3;
    let lhs = &x.pow(4).expect("small exponent") - &(&p(&[2, 0, 1]) * &(y * y));
    report.check("x^4 - (t^2+2) y^2 equals the stored result", &lhs == stored, lhs.to_string());
    report.check("deg x = 2k + 1", x.deg() == Some(2 * k + 1), format!("deg x = {}", x.degree()));
    // deg x^4 = 2 + 2 deg y forces deg y = 4k + 1 for the stored pair.
    report.check("deg y = 4k + 1", y.deg() == Some(4 * k + 1), format!("deg y = {}", y.degree()));
    report.check("deg(x^4 - (t^2+2) y^2) = deg x", lhs.deg() == x.deg(), "");
    for (t0, value) in [(0, -7), (1, 277)] {
        let t0 = BigInt::from(t0);
        let direct: BigInt = x.eval(&t0).pow(4) - (&t0 * &t0 + 2) * y.eval(&t0).pow(2);
        report.check(
            format!("t = {t0} gives {value}"),
            direct == BigInt::from(value) && stored.eval(&t0) == BigInt::from(value),
            direct.to_string(),
        );
    }
    report
}
