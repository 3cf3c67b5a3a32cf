//! GF(2^8) arithmetic over the reduction polynomial x^8 + x^4 + x^3 + x^2 + 1.

/// Reduction polynomial, including the x^8 term.
pub const POLY: u16 = 0x11d;

/// Generator of the multiplicative group.
pub const ALPHA: u8 = 0x02;

struct Tables {
    exp: [u8; 512],
    log: [u8; 256],
}

const TABLES: Tables = build_tables();

const fn build_tables() -> Tables {
    let mut exp = [0u8; 512];
    let mut log = [0u8; 256];
    let mut x: u16 = 1;
    let mut i = 0;
    while i < 255 {
        exp[i] = x as u8;
        log[x as usize] = i as u8;
        x <<= 1;
        if x & 0x100 != 0 {
            x ^= POLY;
        }
        i += 1;
    }
    // second copy avoids a modulo in mul
    while i < 512 {
        exp[i] = exp[i - 255];
        i += 1;
    }
    Tables { exp, log }
}

#[inline]
pub fn exp(power: usize) -> u8 {
    TABLES.exp[power % 255]
}

/// Discrete log of a nonzero element.
#[inline]
pub fn log(a: u8) -> usize {
    debug_assert!(a != 0, "log of zero");
    TABLES.log[a as usize] as usize
}

#[inline]
pub fn add(a: u8, b: u8) -> u8 {
    a ^ b
}

#[inline]
pub fn mul(a: u8, b: u8) -> u8 {
    if a == 0 || b == 0 {
        return 0;
    }
    TABLES.exp[TABLES.log[a as usize] as usize + TABLES.log[b as usize] as usize]
}

#[inline]
pub fn inv(a: u8) -> u8 {
    assert!(a != 0, "zero has no inverse in GF(256)");
    TABLES.exp[255 - TABLES.log[a as usize] as usize]
}

#[inline]
pub fn div(a: u8, b: u8) -> u8 {
    mul(a, inv(b))
}

pub fn pow(a: u8, e: usize) -> u8 {
    if e == 0 {
        return 1;
    }
    if a == 0 {
        return 0;
    }
    exp(log(a) * e % 255)
}

/// Evaluates a polynomial stored lowest degree first.
pub fn eval_ascending(poly: &[u8], x: u8) -> u8 {
    poly.iter().rev().fold(0, |acc, c| mul(acc, x) ^ c)
}

/// Evaluates a polynomial stored highest degree first (codeword order).
pub fn eval_descending(poly: &[u8], x: u8) -> u8 {
    poly.iter().fold(0, |acc, c| mul(acc, x) ^ c)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Carry-less multiply with reduction, independent of the tables.
    fn slow_mul(mut a: u8, mut b: u8) -> u8 {
        let mut p = 0u8;
        while b != 0 {
            if b & 1 != 0 {
                p ^= a;
            }
            let carry = a & 0x80 != 0;
            a <<= 1;
            if carry {
                a ^= (POLY & 0xff) as u8;
            }
            b >>= 1;
        }
        p
    }

    #[test]
    fn tables_match_shift_and_add() {
        for a in 0..=255u8 {
            for b in 0..=255u8 {
                assert_eq!(mul(a, b), slow_mul(a, b), "{a} * {b}");
            }
        }
    }

    #[test]
    fn every_nonzero_element_has_an_inverse() {
        for a in 1..=255u8 {
            assert_eq!(mul(a, inv(a)), 1, "a = {a}");
            assert_eq!(div(a, a), 1);
        }
    }

    #[test]
    fn alpha_generates_the_group() {
        let mut seen = [false; 256];
        for i in 0..255 {
            let e = exp(i);
            assert!(!seen[e as usize]);
            seen[e as usize] = true;
            assert_eq!(log(e), i);
        }
        assert!(!seen[0]);
        assert_eq!(exp(255), 1);
        assert_eq!(pow(ALPHA, 8), 0x1d);
    }

    #[test]
    fn polynomial_evaluation_orders_agree() {
        let p = [3u8, 0, 7, 1];
        let mut rev = p;
        rev.reverse();
        for x in 0..=255u8 {
            assert_eq!(eval_ascending(&p, x), eval_descending(&rev, x));
        }
        // 3 + 7x^2 + x^3 at x = 1 is 3 ^ 7 ^ 1
        assert_eq!(eval_ascending(&p, 1), 3 ^ 7 ^ 1);
    }
}
