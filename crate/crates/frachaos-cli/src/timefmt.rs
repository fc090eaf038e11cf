//! UTC ISO-8601 timestamps. `SOURCE_DATE_EPOCH`, when set, overrides the
//! clock so repeated runs produce byte-identical output files.

use std::time::{SystemTime, UNIX_EPOCH};

pub fn timestamp_utc() -> String {
    let secs = match std::env::var("SOURCE_DATE_EPOCH") {
        Ok(v) => v.parse::<u64>().unwrap_or(0),
        Err(_) => SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    iso8601_from_epoch(secs)
}

/// Render seconds-since-epoch as `YYYY-MM-DDThh:mm:ssZ`.
pub fn iso8601_from_epoch(secs: u64) -> String {
    let days = (secs / 86_400) as i64;
    let rem = secs % 86_400;
    let (y, m, d) = civil_from_days(days);
    format!(
        "{y:04}-{m:02}-{d:02}T{:02}:{:02}:{:02}Z",
        rem / 3600,
        (rem % 3600) / 60,
        rem % 60
    )
}

/// Days since 1970-01-01 to (year, month, day), proleptic Gregorian.
fn civil_from_days(z: i64) -> (i64, u32, u32) {
    let z = z + 719_468;
    let era = if z >= 0 { z } else { z - 146_096 } / 146_097;
    let doe = (z - era * 146_097) as u64;
    let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
    let y = yoe as i64 + era * 400;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let d = (doy - (153 * mp + 2) / 5 + 1) as u32;
    let m = if mp < 10 { mp + 3 } else { mp - 9 } as u32;
    (y + i64::from(m <= 2), m, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_timestamps() {
        assert_eq!(iso8601_from_epoch(0), "1970-01-01T00:00:00Z");
        // 2000-03-01 00:00:00 UTC (leap-century boundary)
        assert_eq!(iso8601_from_epoch(951_868_800), "2000-03-01T00:00:00Z");
        // 2009-02-13 23:31:30 UTC
        assert_eq!(iso8601_from_epoch(1_234_567_890), "2009-02-13T23:31:30Z");
    }
}
