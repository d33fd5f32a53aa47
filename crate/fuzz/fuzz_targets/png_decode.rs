#![no_main]

use libfuzzer_sys::fuzz_target;
use marine_snow::RasterImage;

fuzz_target!(|bytes: &[u8]| {
    if let Ok(image) = RasterImage::decode_png(bytes) {
        let png = image.encode_png().expect("decoded image encodes");
        assert_eq!(RasterImage::decode_png(&png).expect("round trip"), image);
    }
});
