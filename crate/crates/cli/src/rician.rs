//! Conversion between the Rician `K` factor and the Nakagami `m` that matches
//! its amount of fading, `m = (K + 1)² / (2K + 1)`.

/// Nakagami `m` equivalent to Rician factor `k ≥ 0`.
pub fn rician_k_to_nakagami_m(k: f64) -> Option<f64> {
    if !(k >= 0.0 && k.is_finite()) {
        return None;
    }
    Some((k + 1.0).powi(2) / (2.0 * k + 1.0))
}

/// Rician factor for Nakagami `m ≥ 1`: `K = (m − 1) + sqrt(m² − m)`.
pub fn nakagami_m_to_rician_k(m: f64) -> Option<f64> {
    if !(m >= 1.0 && m.is_finite()) {
        return None;
    }
    Some((m - 1.0) + (m * m - m).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        assert_eq!(rician_k_to_nakagami_m(0.0), Some(1.0));
        assert_eq!(nakagami_m_to_rician_k(1.0), Some(0.0));
        for k in [0.1, 1.0, 3.5, 10.0, 250.0] {
            let m = rician_k_to_nakagami_m(k).unwrap();
            let back = nakagami_m_to_rician_k(m).unwrap();
            assert!((back - k).abs() <= 1e-9 * k.max(1.0), "{k} -> {m} -> {back}");
        }
        assert_eq!(nakagami_m_to_rician_k(0.7), None);
        assert_eq!(rician_k_to_nakagami_m(-1.0), None);
    }

    #[test]
    fn larger_m_means_stronger_line_of_sight() {
        let ks: Vec<f64> = [1.0, 1.5, 2.0, 4.0, 9.0].iter().map(|&m| nakagami_m_to_rician_k(m).unwrap()).collect();
        assert!(ks.windows(2).all(|w| w[1] > w[0]));
    }
}
