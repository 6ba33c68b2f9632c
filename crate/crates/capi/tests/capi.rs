//! Exercises the C surface through the exported extern "C" functions.

use std::ffi::{c_char, CStr, CString};

use mupi_capi::*;

fn last_error() -> String {
    let mut buf = vec![0i8; 512];
    unsafe { mupi_last_error_message(buf.as_mut_ptr() as *mut c_char, buf.len()) };
    unsafe { CStr::from_ptr(buf.as_ptr() as *const c_char) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn version_is_nonempty() {
    let v = unsafe { CStr::from_ptr(mupi_version()) };
    assert!(!v.to_bytes().is_empty());
}

#[test]
fn parse_degree_and_format() {
    let text = CString::new("sym1(f12) x sym2(f16)").unwrap();
    let mut rep: *mut MupiRep = std::ptr::null_mut();
    let st = unsafe { mupi_rep_parse(std::ptr::null(), text.as_ptr(), &mut rep) };
    assert_eq!(st, MupiStatus::Ok);
    assert_eq!(unsafe { mupi_rep_degree(rep) }, 6);

    let needed = unsafe { mupi_rep_format(rep, std::ptr::null_mut(), 0) };
    let mut buf = vec![0u8; needed];
    unsafe { mupi_rep_format(rep, buf.as_mut_ptr() as *mut c_char, buf.len()) };
    let s = CStr::from_bytes_until_nul(&buf).unwrap().to_str().unwrap();
    assert_eq!(s, "sym1(f12) x sym2(f16)");
    unsafe { mupi_rep_free(rep) };
}

#[test]
fn parse_error_reports_offset() {
    let text = CString::new("sym1(f13)").unwrap();
    let mut rep: *mut MupiRep = std::ptr::null_mut();
    let st = unsafe { mupi_rep_parse(std::ptr::null(), text.as_ptr(), &mut rep) };
    assert_eq!(st, MupiStatus::Parse);
    assert_eq!(mupi_last_error_offset(), 5);
    assert!(last_error().contains("f13"), "{}", last_error());
}

#[test]
fn null_arguments_are_rejected() {
    let st = unsafe { mupi_rep_parse(std::ptr::null(), std::ptr::null(), std::ptr::null_mut()) };
    assert_eq!(st, MupiStatus::NullPointer);
    let mut out = 0.0f64;
    let st = unsafe { mupi_table_value(std::ptr::null(), 1, &mut out) };
    assert_eq!(st, MupiStatus::NullPointer);
    unsafe { mupi_session_free(std::ptr::null_mut()) }; // no-op, no crash
}

#[test]
fn end_to_end_table_through_c_surface() {
    let sess = mupi_session_new();
    let text = CString::new("sym1(f12)").unwrap();
    let mut rep: *mut MupiRep = std::ptr::null_mut();
    assert_eq!(
        unsafe { mupi_rep_parse(sess, text.as_ptr(), &mut rep) },
        MupiStatus::Ok
    );
    assert_eq!(unsafe { mupi_session_prepare(sess, rep, 1000) }, MupiStatus::Ok);

    let mut lambda = 0.0f64;
    let mut mobius = [0.0f64; 8];
    let mut len = 0usize;
    let st = unsafe {
        mupi_local_data(sess, rep, 2, &mut lambda, mobius.as_mut_ptr(), mobius.len(), &mut len)
    };
    assert_eq!(st, MupiStatus::Ok);
    assert_eq!(len, 3);
    assert!((lambda + 0.5303300858899106).abs() < 1e-12);
    assert!((mobius[0] - 1.0).abs() < 1e-15);
    assert!((mobius[1] - 0.5303300858899106).abs() < 1e-12);
    assert!((mobius[2] - 1.0).abs() < 1e-12);

    let mut table: *mut MupiTable = std::ptr::null_mut();
    assert_eq!(
        unsafe { mupi_mobius_table_new(sess, rep, 1000, &mut table) },
        MupiStatus::Ok
    );
    assert_eq!(unsafe { mupi_table_n_max(table) }, 1000);
    let mut v = 0.0f64;
    assert_eq!(unsafe { mupi_table_value(table, 1, &mut v) }, MupiStatus::Ok);
    assert_eq!(v, 1.0);
    assert_eq!(unsafe { mupi_table_value(table, 4, &mut v) }, MupiStatus::Ok);
    assert!((v - 1.0).abs() < 1e-12); // mu(4) = e_2 = alpha beta = 1
    assert_eq!(
        unsafe { mupi_table_value(table, 0, &mut v) },
        MupiStatus::Argument
    );

    let mut s = 0.0f64;
    assert_eq!(unsafe { mupi_table_abs_sum(table, 1000, &mut s) }, MupiStatus::Ok);
    assert!(s > 0.0 && s < 1000.0);

    unsafe {
        mupi_table_free(table);
        mupi_rep_free(rep);
        mupi_session_free(sess);
    }
}

#[test]
fn maass_load_through_c_surface() {
    let sess = mupi_session_new();
    let fixture = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../core/fixtures/maass_r9p5337_small.txt"
    );
    let path = CString::new(fixture).unwrap();
    let mut id = vec![0u8; 64];
    let st = unsafe {
        mupi_session_load_maass(sess, path.as_ptr(), id.as_mut_ptr() as *mut c_char, id.len())
    };
    assert_eq!(st, MupiStatus::Ok, "{}", last_error());
    let id = CStr::from_bytes_until_nul(&id).unwrap().to_str().unwrap();
    assert_eq!(id, "maass:maass_r9p5337_small");

    let text = CString::new("sym1(maass:maass_r9p5337_small)").unwrap();
    let mut rep: *mut MupiRep = std::ptr::null_mut();
    assert_eq!(unsafe { mupi_rep_parse(sess, text.as_ptr(), &mut rep) }, MupiStatus::Ok);
    assert_eq!(unsafe { mupi_session_prepare(sess, rep, 2000) }, MupiStatus::Ok);

    let mut table: *mut MupiTable = std::ptr::null_mut();
    assert_eq!(
        unsafe { mupi_mobius_table_new(sess, rep, 2000, &mut table) },
        MupiStatus::Ok
    );
    let mut v = 0.0f64;
    assert_eq!(unsafe { mupi_table_value(table, 2, &mut v) }, MupiStatus::Ok);
    assert!((v + 1.549304477941).abs() < 1e-9); // mu(p) = -lambda(p)
    assert_eq!(unsafe { mupi_table_value(table, 4, &mut v) }, MupiStatus::Ok);
    assert!((v - 1.0).abs() < 1e-9); // mu(p^2) = 1

    unsafe {
        mupi_table_free(table);
        mupi_rep_free(rep);
        mupi_session_free(sess);
    }
}

#[test]
fn identity_and_eta_entry_points() {
    assert_eq!(mupi_check_decomposition(4, 5), 1);
    assert_eq!(mupi_power_identity_failures(), 0);
    let mut eta = 0.0f64;
    assert_eq!(unsafe { mupi_eta_exponent(1, 0, &mut eta) }, MupiStatus::Ok);
    assert!((eta - 0.06515307716504657).abs() < 1e-15);
    assert_eq!(
        unsafe { mupi_eta_exponent(0, 0, &mut eta) },
        MupiStatus::Argument
    );
}
