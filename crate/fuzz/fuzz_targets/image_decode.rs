#![no_main]

use libfuzzer_sys::fuzz_target;
use marine_snow::RasterImage;

fuzz_target!(|bytes: &[u8]| {
    if let Ok(image) = RasterImage::decode(bytes) {
        assert_eq!(image.as_raw().len(), image.height() * image.width() * 3);
    }
});
