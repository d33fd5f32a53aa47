#![no_main]

use libfuzzer_sys::fuzz_target;
use marine_snow::dataset::DatasetManifest;

fuzz_target!(|text: &str| {
    if let Ok(manifest) = DatasetManifest::from_json(text) {
        let json = manifest.to_json().expect("manifest serializes");
        assert_eq!(
            DatasetManifest::from_json(&json).expect("round trip"),
            manifest
        );
    }
});
