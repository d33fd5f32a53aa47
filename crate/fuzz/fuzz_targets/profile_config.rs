#![no_main]

use libfuzzer_sys::fuzz_target;
use marine_snow::profile::TaskProfile;

fuzz_target!(|text: &str| {
    if let Ok(profile) = TaskProfile::from_config_str(text) {
        let again = TaskProfile::from_config_str(&profile.to_config_string())
            .expect("rendered profile parses");
        assert_eq!(again, profile);
    }
});
