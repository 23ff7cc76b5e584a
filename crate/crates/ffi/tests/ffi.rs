use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use cayley_embed_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ce_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take_string(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    ce_string_free(s);
    out
}

fn pls(text: &str) -> *mut CePls {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ce_pls_parse(c.as_ptr(), &mut p) }, CeStatus::Ok, "{}", last_error());
    p
}

fn group(spec: &str) -> *mut CeGroup {
    let c = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ce_group_from_spec(c.as_ptr(), &mut g) }, CeStatus::Ok, "{}", last_error());
    g
}

#[test]
fn nonab_in_dihedral_and_abelian() {
    let p = pls("a b .\nc . b\n. c d\n");
    let d6 = group("dihedral:3");
    let z6 = group("abelian:2,3");
    unsafe {
        assert_eq!(ce_pls_size(p), 6);
        assert_eq!(ce_group_order(d6), 6);
        let mut ok = false;
        let mut json = ptr::null_mut();
        assert_eq!(ce_embed(p, d6, &mut ok, &mut json), CeStatus::Ok);
        assert!(ok);
        let verdict: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(verdict["verdict"], "embeddable");
        assert_eq!(verdict["witness"]["I1"].as_array().unwrap().len(), 3);
        assert_eq!(ce_embed(p, z6, &mut ok, ptr::null_mut()), CeStatus::Ok);
        assert!(!ok);
        ce_pls_free(p);
        ce_group_free(d6);
        ce_group_free(z6);
    }
}

#[test]
fn counting_and_species_keys() {
    let single = pls("1 1 1\n");
    let z5 = group("cyclic:5");
    unsafe {
        let mut count = 0;
        assert_eq!(ce_count_embeddings(single, z5, &mut count), CeStatus::Ok);
        assert_eq!(count, 25);
        let a = pls("1 1 1\n2 2 2\n");
        let b = pls("x . \n. y\n");
        let (mut ka, mut kb) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(ce_pls_species_key(a, &mut ka), CeStatus::Ok);
        assert_eq!(ce_pls_species_key(b, &mut kb), CeStatus::Ok);
        assert_eq!(take_string(ka), take_string(kb));
        ce_pls_free(a);
        ce_pls_free(b);
        ce_pls_free(single);
        ce_group_free(z5);
    }
}

#[test]
fn psi_and_class_errors() {
    unsafe {
        let mut value = 0;
        let mut json = ptr::null_mut();
        assert_eq!(ce_psi(6, CeVariant::Group, &mut value, &mut json), CeStatus::Ok);
        assert_eq!(value, 5);
        let r: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(r["obstacles"].as_array().unwrap().len(), 5);
        assert_eq!(ce_psi(12, CeVariant::Cyclic, &mut value, ptr::null_mut()), CeStatus::Ok);
        assert_eq!(value, 5);
        assert_eq!(ce_psi(20, CeVariant::Group, &mut value, ptr::null_mut()), CeStatus::IncompleteClass);
        assert!(last_error().contains("order 20"));

        let groups = [group("cyclic:10"), group("dihedral:5")];
        let handles: Vec<*const CeGroup> = groups.iter().map(|&g| g as *const CeGroup).collect();
        assert_eq!(
            ce_psi_with_groups(10, CeVariant::Group, handles.as_ptr(), 2, &mut value, ptr::null_mut()),
            CeStatus::Ok
        );
        assert_eq!(value, 5);
        assert_eq!(
            ce_psi_with_groups(10, CeVariant::Abelian, handles.as_ptr(), 2, &mut value, ptr::null_mut()),
            CeStatus::InvalidArgument
        );
        for g in groups {
            ce_group_free(g);
        }
    }
}

#[test]
fn diagonal_partition() {
    let z6 = group("cyclic:6");
    unsafe {
        let parts = [3usize, 3];
        let mut found = false;
        let mut pi = [usize::MAX; 6];
        assert_eq!(ce_diagonal_partition(z6, parts.as_ptr(), 2, &mut found, pi.as_mut_ptr()), CeStatus::Ok);
        assert!(found);
        let mut sorted = pi;
        sorted.sort_unstable();
        assert_eq!(sorted, [0, 1, 2, 3, 4, 5]);
        let bad = [3usize, 2];
        assert_eq!(
            ce_diagonal_partition(z6, bad.as_ptr(), 2, &mut found, ptr::null_mut()),
            CeStatus::InvalidArgument
        );
        ce_group_free(z6);
    }
}

#[test]
fn tables_and_error_codes() {
    unsafe {
        let z2 = [0u32, 1, 1, 0];
        let mut g = ptr::null_mut();
        assert_eq!(ce_group_from_table(2, z2.as_ptr(), &mut g), CeStatus::Ok);
        assert_eq!(ce_group_order(g), 2);
        ce_group_free(g);
        let broken = [0u32, 1, 1, 1];
        assert_eq!(ce_group_from_table(2, broken.as_ptr(), &mut g), CeStatus::ParseError);
        assert!(!last_error().is_empty());

        let bad_spec = CString::new("torus:3").unwrap();
        assert_eq!(ce_group_from_spec(bad_spec.as_ptr(), &mut g), CeStatus::ParseError);
        let out_of_range = CString::new("dihedral:1").unwrap();
        assert_eq!(ce_group_from_spec(out_of_range.as_ptr(), &mut g), CeStatus::InvalidArgument);

        let clash = CString::new("1 1 1\n1 2 1\n").unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(ce_pls_parse(clash.as_ptr(), &mut p), CeStatus::ParseError);
        assert_eq!(ce_pls_parse(ptr::null(), &mut p), CeStatus::NullArgument);
        let invalid = [0xffu8, 0];
        assert_eq!(ce_pls_parse(invalid.as_ptr().cast(), &mut p), CeStatus::InvalidUtf8);

        let mut ok = false;
        assert_eq!(ce_embed(ptr::null(), ptr::null(), &mut ok, ptr::null_mut()), CeStatus::NullArgument);
        assert_eq!(ce_pls_size(ptr::null()), 0);
        ce_pls_free(ptr::null_mut());
        ce_string_free(ptr::null_mut());
        // success clears the message
        let mut value = 0;
        assert_eq!(ce_psi(3, CeVariant::Cyclic, &mut value, ptr::null_mut()), CeStatus::Ok);
        assert_eq!(last_error(), "");
        assert_eq!(CStr::from_ptr(ce_version()).to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(manifest_dir().join("include/cayley_embed.h")).unwrap();
    let source = std::fs::read_to_string(manifest_dir().join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}

/// Compiles a small C program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let Some(profile_dir) = std::env::current_exe().unwrap().parent().and_then(|d| d.parent()).map(PathBuf::from) else {
        panic!("test binary has no parent directory");
    };
    let lib = profile_dir.join("libcayley_embed_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "cayley_embed.h"

int main(void) {
    CePls *p = NULL;
    CeGroup *g = NULL;
    if (ce_pls_parse("a b .\nc . b\n. c d\n", &p) != CE_STATUS_OK) return 10;
    if (ce_group_from_spec("dihedral:3", &g) != CE_STATUS_OK) return 11;
    bool ok = false;
    char *json = NULL;
    if (ce_embed(p, g, &ok, &json) != CE_STATUS_OK || !ok) return 12;
    if (strstr(json, "\"I1\"") == NULL) return 13;
    ce_string_free(json);
    size_t psi = 0;
    if (ce_psi(12, CE_VARIANT_GROUP, &psi, NULL) != CE_STATUS_OK || psi != 6) return 14;
    if (ce_psi(20, CE_VARIANT_GROUP, &psi, NULL) != CE_STATUS_INCOMPLETE_CLASS) return 15;
    if (strlen(ce_last_error()) == 0) return 16;
    ce_pls_free(p);
    ce_group_free(g);
    printf("ok %s\n", ce_version());
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status();
    let Ok(status) = status else {
        eprintln!("skipping: no C compiler");
        return;
    };
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
