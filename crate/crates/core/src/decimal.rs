//! Decimal rendering for reports: 12 significant digits, ties to even.

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Plain (non-scientific) decimal with [`SIGNIFICANT_DIGITS`] significant
/// digits. Rust's float formatting rounds exact binary ties to even.
pub fn format_decimal(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if exp >= 0 {
        let int_len = exp as usize + 1;
        if int_len >= digits.len() {
            format!("{digits}{}", "0".repeat(int_len - digits.len()))
        } else {
            format!("{}.{}", &digits[..int_len], &digits[int_len..])
        }
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{body}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders() {
        assert_eq!(format_decimal(0.0), "0");
        assert_eq!(format_decimal(1.0), "1.00000000000");
        assert_eq!(format_decimal(2f64.sqrt() * 0.375), "0.530330085890");
        assert_eq!(format_decimal(-0.0125), "-0.0125000000000");
        assert_eq!(format_decimal(123456789012345.0), "123456789012000");
        assert_eq!(format_decimal(0.5), "0.500000000000");
    }
}
