//! Golden-file pins for the series text format.
//!
//! The low-degree tables are forced by the splitting F - x - y = Phi^(2^(s-1))
//! with Phi = xy + (xy)^(2^(s-1))(x+y) modulo ((xy)(x+y))^(2^(s-1)): below the
//! ideal's degree the table has no room for anything else, so these files
//! double as hand-checkable fixtures, not mere regression pins.

use morava_core::fgl::{honda_log, FglContext};

#[test]
fn fgl_s2_matches_golden() {
    let ctx = FglContext::new(2, 12).unwrap();
    assert_eq!(
        format!("{}\n", ctx.fgl()),
        include_str!("golden/fgl_s2_d12.txt")
    );
}

#[test]
fn fgl_s3_matches_golden() {
    let ctx = FglContext::new(3, 24).unwrap();
    assert_eq!(
        format!("{}\n", ctx.fgl()),
        include_str!("golden/fgl_s3_d24.txt")
    );
}

#[test]
fn honda_log_matches_golden() {
    assert_eq!(
        format!("{}\n", honda_log(2, 16).unwrap()),
        include_str!("golden/log_s2_d16.txt")
    );
    assert_eq!(
        format!("{}\n", honda_log(3, 8).unwrap()),
        include_str!("golden/log_s3_d8.txt")
    );
}
