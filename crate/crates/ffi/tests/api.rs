use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use setfam_ffi::*;

fn family(f: impl FnOnce(*mut *mut SetfamFamily) -> SetfamStatus) -> *mut SetfamFamily {
    let mut out = ptr::null_mut();
    assert_eq!(f(&mut out), SetfamStatus::Ok, "{}", last_error());
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    let p = setfam_last_error();
    if p.is_null() {
        return String::new();
    }
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn members(f: *const SetfamFamily) -> Vec<Vec<usize>> {
    let len = unsafe { setfam_family_len(f) };
    (0..len)
        .map(|i| {
            let mut buf = vec![0usize; 64];
            let mut n = 0;
            let st = unsafe { setfam_family_member(f, i, buf.as_mut_ptr(), buf.len(), &mut n) };
            assert_eq!(st, SetfamStatus::Ok);
            buf.truncate(n);
            buf
        })
        .collect()
}

fn take_string(p: *mut libc::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { setfam_string_free(p) };
    s
}

#[test]
fn parse_render_round_trip() {
    let text = CString::new("# fano\nn=7\n1 2 3\n1 4 5\n").unwrap();
    let f = family(|o| unsafe { setfam_family_parse(text.as_ptr(), o) });
    assert_eq!(unsafe { setfam_family_n(f) }, 7);
    assert_eq!(members(f), vec![vec![1, 2, 3], vec![1, 4, 5]]);
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { setfam_family_to_text(f, &mut s) },
        SetfamStatus::Ok
    );
    assert_eq!(take_string(s), "n=7\n1 2 3\n1 4 5\n");
    unsafe { setfam_family_free(f) };
}

#[test]
fn parse_errors_set_status_and_message() {
    let text = CString::new("n=3\n1 4\n").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { setfam_family_parse(text.as_ptr(), &mut out) },
        SetfamStatus::Parse
    );
    assert!(out.is_null());
    assert!(last_error().starts_with("line 2"), "{}", last_error());
    assert_eq!(
        unsafe { setfam_family_parse(ptr::null(), &mut out) },
        SetfamStatus::NullPointer
    );
}

#[test]
fn from_lists_and_member_buffer() {
    let elements = [1usize, 2, 3, 2, 4];
    let lengths = [3usize, 2];
    let f = family(|o| unsafe {
        setfam_family_from_lists(5, elements.as_ptr(), lengths.as_ptr(), 2, o)
    });
    assert_eq!(members(f), vec![vec![1, 2, 3], vec![2, 4]]);
    let mut small = [0usize; 1];
    let mut len = 0;
    let st = unsafe { setfam_family_member(f, 0, small.as_mut_ptr(), 1, &mut len) };
    assert_eq!((st, len), (SetfamStatus::BufferTooSmall, 3));
    let st = unsafe { setfam_family_member(f, 9, small.as_mut_ptr(), 1, &mut len) };
    assert_eq!(st, SetfamStatus::InvalidArgument);
    unsafe { setfam_family_free(f) };

    let bad = [9usize];
    let mut out = ptr::null_mut();
    let st = unsafe { setfam_family_from_lists(5, bad.as_ptr(), [1usize].as_ptr(), 1, &mut out) };
    assert_eq!(st, SetfamStatus::InvalidArgument);
}

#[test]
fn constructions_and_checks() {
    let plane = family(|o| unsafe { setfam_projective_plane(3, o) });
    assert_eq!(unsafe { setfam_family_len(plane) }, 13);
    let mut holds = false;
    assert_eq!(
        unsafe { setfam_verify_design(plane, 2, 1, &mut holds) },
        SetfamStatus::Ok
    );
    assert!(holds);

    let paley = family(|o| unsafe { setfam_paley_biplane(o) });
    let res = family(|o| unsafe { setfam_residual(paley, 0, o) });
    assert_eq!(
        (unsafe { setfam_family_n(res) }, unsafe {
            setfam_family_len(res)
        }),
        (6, 10)
    );

    let fano = family(|o| unsafe { setfam_projective_plane(2, o) });
    let aug = family(|o| unsafe { setfam_steiner_augment(fano, 2, o) });
    let c = SetfamConstraint {
        kind: SetfamAllowedKind::Interval,
        lmin: 1,
        lmax: 2,
        lset: ptr::null(),
        lset_len: 0,
        size_min: 4,
        size_max: 4,
    };
    let mut v = SetfamValidation {
        valid: false,
        kind: SetfamViolationKind::None,
        i: 0,
        j: 0,
    };
    assert_eq!(
        unsafe { setfam_validate(aug, &c, &mut v) },
        SetfamStatus::Ok
    );
    assert!(v.valid);

    let fc = family(|o| unsafe { setfam_fano_complement(o) });
    let c1 = SetfamConstraint { lmax: 1, ..c };
    assert_eq!(
        unsafe { setfam_validate(fc, &c1, &mut v) },
        SetfamStatus::Ok
    );
    assert_eq!(
        (v.valid, v.kind, v.i, v.j),
        (false, SetfamViolationKind::IntersectionSize, 0, 1)
    );

    let d = family(|o| unsafe { setfam_d_construction(4, 2, o) });
    assert_eq!(unsafe { setfam_family_len(d) }, 37);
    let all = family(|o| unsafe { setfam_all_k_subsets(5, 3, o) });
    assert_eq!(unsafe { setfam_family_len(all) }, 10);
    let star = family(|o| unsafe { setfam_star(6, 3, o) });
    assert_eq!(unsafe { setfam_family_len(star) }, 10);

    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { setfam_triple_cover(star, &mut out) },
        SetfamStatus::Hypothesis
    );
    assert!(last_error().contains("common element"));
    let cover = family(|o| unsafe { setfam_triple_cover(fano, o) });
    assert!(unsafe { setfam_family_len(cover) } <= 27);

    for f in [plane, paley, res, fano, aug, fc, d, all, star, cover] {
        unsafe { setfam_family_free(f) };
    }
}

#[test]
fn bounds_as_json() {
    let mut s = ptr::null_mut();
    let st = unsafe { setfam_bound_json(SetfamTheorem::Thm15, 7, 4, 2, &mut s) };
    assert_eq!(st, SetfamStatus::Ok);
    let json = take_string(s);
    assert!(json.contains("\"floor\":\"5\""), "{json}");
    assert!(json.contains("\"applicable\":false"));
    let st = unsafe { setfam_bound_json(SetfamTheorem::Thm16, 10, 4, 2, &mut s) };
    assert_eq!(st, SetfamStatus::InvalidArgument);
}

#[test]
fn search_handles() {
    let c = SetfamConstraint {
        kind: SetfamAllowedKind::Interval,
        lmin: 1,
        lmax: 2,
        lset: ptr::null(),
        lset_len: 0,
        size_min: 3,
        size_max: 3,
    };
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { setfam_max_family(5, &c, ptr::null(), &mut r) },
        SetfamStatus::Ok
    );
    assert_eq!(unsafe { setfam_search_result_max_size(r) }, 10);
    assert_eq!(
        unsafe { setfam_search_result_status(r) },
        SetfamSearchStatus::Exact
    );
    assert!(unsafe { setfam_search_result_nodes(r) } > 0);
    let w = family(|o| unsafe { setfam_search_result_witness(r, o) });
    assert_eq!(members(w).len(), 10);
    unsafe {
        setfam_family_free(w);
        setfam_search_result_free(r);
    }

    let one = [1usize];
    let c = SetfamConstraint {
        kind: SetfamAllowedKind::Explicit,
        lset: one.as_ptr(),
        lset_len: 1,
        ..c
    };
    let fano = family(|o| unsafe { setfam_projective_plane(2, o) });
    let opts = SetfamSearchOptions {
        symmetry_breaking: false,
        parallel: true,
        node_budget: 1,
        time_budget_ms: 0,
        seed: fano,
    };
    assert_eq!(
        unsafe { setfam_max_family(7, &c, &opts, &mut r) },
        SetfamStatus::Ok
    );
    assert_eq!(
        unsafe { setfam_search_result_status(r) },
        SetfamSearchStatus::BudgetExhausted
    );
    assert_eq!(unsafe { setfam_search_result_max_size(r) }, 7);
    unsafe {
        setfam_search_result_free(r);
        setfam_family_free(fano);
    }

    let big = SetfamConstraint {
        kind: SetfamAllowedKind::Interval,
        lset: ptr::null(),
        lset_len: 0,
        size_min: 4,
        size_max: 4,
        ..c
    };
    assert_eq!(
        unsafe { setfam_max_family(40, &big, ptr::null(), &mut r) },
        SetfamStatus::TooLarge
    );
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        setfam_family_free(ptr::null_mut());
        setfam_search_result_free(ptr::null_mut());
        setfam_string_free(ptr::null_mut());
        assert_eq!(setfam_family_len(ptr::null()), 0);
        assert_eq!(setfam_search_result_max_size(ptr::null()), 0);
        let mut out = ptr::null_mut();
        assert_eq!(
            setfam_residual(ptr::null(), 0, &mut out),
            SetfamStatus::NullPointer
        );
        assert_eq!(
            setfam_fano_complement(ptr::null_mut()),
            SetfamStatus::NullPointer
        );
    }
}

/// Compiles `smoke.c` against the generated header and the static library.
#[test]
fn c_smoke_program() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libsetfam_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!(
            "skipped: no C compiler or static library at {}",
            lib.display()
        );
        return;
    }
    let out_dir = tempfile::tempdir().unwrap();
    let bin = out_dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
