/**
 * Reference implementation of the LookALikes text watermarking scheme.
 *
 * Twenty-three Latin letters have a Cyrillic homoglyph that renders
 * identically in common fonts. Every occurrence of a table letter in the
 * cover carries one payload bit: the Latin original encodes 0, the
 * Cyrillic look-alike encodes 1. The visible text is unchanged, only the
 * underlying code points differ.
 *
 * <p>The class is intentionally self contained: every helper needed to
 * reproduce the embedding and the extraction lives in this single file so
 * that the algorithm can be audited top to bottom without chasing
 * dependencies. Only the JDK standard library is used.</p>
 */
public final class LookalikesWatermark {

    private LookalikesWatermark() {
    }

    /**
     * Twenty-three Latin to Cyrillic homoglyph pairs.
     * Each row maps an original code point to its visually confusable
     * variant. Originals and variants are disjoint sets.
     */
    private static final int[][] TABLE = {
        {0x0061, 0x0430}, // a -> CYRILLIC SMALL LETTER A
        {0x0063, 0x0441}, // c -> CYRILLIC SMALL LETTER ES
        {0x0064, 0x0501}, // d -> CYRILLIC SMALL LETTER KOMI DE
        {0x0065, 0x0435}, // e -> CYRILLIC SMALL LETTER IE
        {0x0068, 0x04BB}, // h -> CYRILLIC SMALL LETTER SHHA
        {0x0069, 0x0456}, // i -> CYRILLIC SMALL LETTER BYELORUSSIAN-UKRAINIAN I
        {0x006A, 0x0458}, // j -> CYRILLIC SMALL LETTER JE
        {0x006C, 0x04CF}, // l -> CYRILLIC SMALL LETTER PALOCHKA
        {0x006F, 0x043E}, // o -> CYRILLIC SMALL LETTER O
        {0x0070, 0x0440}, // p -> CYRILLIC SMALL LETTER ER
        {0x0071, 0x051B}, // q -> CYRILLIC SMALL LETTER QA
        {0x0073, 0x0455}, // s -> CYRILLIC SMALL LETTER DZE
        {0x0077, 0x051D}, // w -> CYRILLIC SMALL LETTER WE
        {0x0078, 0x0445}, // x -> CYRILLIC SMALL LETTER HA
        {0x0079, 0x0443}, // y -> CYRILLIC SMALL LETTER U
        {0x0041, 0x0410}, // A -> CYRILLIC CAPITAL LETTER A
        {0x0042, 0x0412}, // B -> CYRILLIC CAPITAL LETTER VE
        {0x0043, 0x0421}, // C -> CYRILLIC CAPITAL LETTER ES
        {0x0045, 0x0415}, // E -> CYRILLIC CAPITAL LETTER IE
        {0x0048, 0x041D}, // H -> CYRILLIC CAPITAL LETTER EN
        {0x004B, 0x041A}, // K -> CYRILLIC CAPITAL LETTER KA
        {0x004D, 0x041C}, // M -> CYRILLIC CAPITAL LETTER EM
        {0x004F, 0x041E}, // O -> CYRILLIC CAPITAL LETTER O
    };

    private static int variantOf(int original) {
        for (int[] row : TABLE) {
            if (row[0] == original) {
                return row[1];
            }
        }
        return -1;
    }

    private static int originalOf(int variant) {
        for (int[] row : TABLE) {
            if (row[1] == variant) {
                return row[0];
            }
        }
        return -1;
    }

    /**
     * Walks the cover left to right. Every character that appears in the
     * table carries one payload bit: the original spelling encodes 0 and
     * the confusable variant encodes 1. Characters outside the table are
     * copied unchanged. The frame must fit into the number of eligible
     * characters, remaining eligible characters encode slack zeros.
     */
    public static String embed(String cover, String watermark) {
        BitBuffer frame = framePayload(watermark);
        int frameBits = frame.size();
        java.util.List<Integer> out = new java.util.ArrayList<>();
        int used = 0;
        for (int cp : scalars(cover)) {
            int original = originalOf(cp) >= 0 ? originalOf(cp) : cp;
            int variant = variantOf(original);
            if (variant < 0) {
                out.add(cp);
                continue;
            }
            boolean bit = used < frameBits && frame.read();
            out.add(bit ? variant : original);
            used++;
        }
        if (used < frameBits) {
            throw new IllegalArgumentException("not enough eligible characters in the cover");
        }
        return fromScalars(out);
    }

    /** Reads one bit per eligible character and unframes the payload. */
    public static String extract(String text) {
        BitBuffer bits = new BitBuffer();
        boolean sawVariant = false;
        for (int cp : scalars(text)) {
            if (originalOf(cp) >= 0) {
                bits.push(true);
                sawVariant = true;
            } else if (variantOf(cp) >= 0) {
                bits.push(false);
            }
        }
        if (!sawVariant && bits.size() >= FRAME_HEADER_BITS) {
            throw new IllegalStateException("no watermark present");
        }
        return unframePayload(bits);
    }


    // ------------------------------------------------------------------
    // Bit-level utilities
    // ------------------------------------------------------------------

    /**
     * Growable sequence of bits. Byte conversions are most-significant-bit
     * first within each byte, so the byte 0x41 becomes the bit sequence
     * 0 1 0 0 0 0 0 1 in that order.
     */
    static final class BitBuffer {
        private final java.util.ArrayList<Boolean> bits = new java.util.ArrayList<>();
        private int cursor = 0;

        void push(boolean bit) {
            bits.add(bit);
        }

        void pushInt(long value, int width) {
            for (int i = width - 1; i >= 0; i--) {
                push(((value >>> i) & 1L) != 0L);
            }
        }

        void pushBytes(byte[] data) {
            for (byte b : data) {
                pushInt(b & 0xFFL, 8);
            }
        }

        boolean read() {
            if (cursor >= bits.size()) {
                throw new IllegalStateException("bit buffer exhausted");
            }
            return bits.get(cursor++);
        }

        long readInt(int width) {
            long value = 0L;
            for (int i = 0; i < width; i++) {
                value = (value << 1) | (read() ? 1L : 0L);
            }
            return value;
        }

        int size() {
            return bits.size();
        }

        int remaining() {
            return bits.size() - cursor;
        }

        byte[] toBytes() {
            if (bits.size() % 8 != 0) {
                throw new IllegalStateException("bit count is not a multiple of eight");
            }
            byte[] out = new byte[bits.size() / 8];
            for (int i = 0; i < bits.size(); i++) {
                if (bits.get(i)) {
                    out[i / 8] |= (byte) (1 << (7 - (i % 8)));
                }
            }
            return out;
        }
    }

    // ------------------------------------------------------------------
    // Payload framing
    // ------------------------------------------------------------------

    /** Number of header bits carrying the payload length in bytes. */
    private static final int FRAME_HEADER_BITS = 16;

    /**
     * Frames a UTF-8 payload as a 16 bit big-endian byte-length header
     * followed by the payload bits. The header counts bytes, not bits,
     * so a payload of n bytes frames to 16 + 8 * n bits.
     */
    static BitBuffer framePayload(String watermark) {
        byte[] payload = watermark.getBytes(java.nio.charset.StandardCharsets.UTF_8);
        if (payload.length > 0xFFFF) {
            throw new IllegalArgumentException("payload exceeds 65535 bytes");
        }
        BitBuffer frame = new BitBuffer();
        frame.pushInt(payload.length, FRAME_HEADER_BITS);
        frame.pushBytes(payload);
        return frame;
    }

    /**
     * Inverse of {@link #framePayload(String)}. Bits past the declared
     * payload length are slack from the carrier and are ignored.
     */
    static String unframePayload(BitBuffer frame) {
        if (frame.remaining() < FRAME_HEADER_BITS) {
            throw new IllegalStateException("frame shorter than its header");
        }
        int byteLength = (int) frame.readInt(FRAME_HEADER_BITS);
        if (frame.remaining() < byteLength * 8) {
            throw new IllegalStateException("frame truncated inside payload");
        }
        BitBuffer payload = new BitBuffer();
        for (int i = 0; i < byteLength * 8; i++) {
            payload.push(frame.read());
        }
        return new String(payload.toBytes(), java.nio.charset.StandardCharsets.UTF_8);
    }

    // ------------------------------------------------------------------
    // Code point helpers
    // ------------------------------------------------------------------

    /** Splits a string into Unicode scalar values. */
    static int[] scalars(String text) {
        return text.codePoints().toArray();
    }

    /** Rebuilds a string from Unicode scalar values. */
    static String fromScalars(java.util.List<Integer> points) {
        StringBuilder sb = new StringBuilder();
        for (int cp : points) {
            sb.appendCodePoint(cp);
        }
        return sb.toString();
    }


    // ------------------------------------------------------------------
    // Self test
    // ------------------------------------------------------------------

    /**
     * Embeds a sample watermark into a sample cover, extracts it again and
     * verifies the round trip. Run with:
     *
     * <pre>
     *   javac LookalikesWatermark.java
     *   java LookalikesWatermark
     * </pre>
     */
    public static void main(String[] args) {
        String cover = String.join("\n",
                "Lorem ipsum dolor sit amet, consetetur sadipscing elitr,",
                "sed diam nonumy eirmod tempor invidunt ut labore et dolore",
                "magna aliquyam erat, sed diam voluptua. At vero eos et",
                "accusam et justo duo dolores et ea rebum. Stet clita kasd",
                "gubergren, no sea takimata sanctus est Lorem ipsum dolor",
                "sit amet. Lorem ipsum dolor sit amet, consetetur sadipscing",
                "elitr, sed diam nonumy eirmod tempor invidunt ut labore et",
                "dolore magna aliquyam erat, sed diam voluptua. At vero eos",
                "et accusam et justo duo dolores et ea rebum. Stet clita",
                "kasd gubergren, no sea takimata sanctus est.");
        String watermark = args.length > 0 ? args[0] : "Secret Message";
        String stego = embed(cover, watermark);
        String recovered = extract(stego);
        if (!watermark.equals(recovered)) {
            throw new AssertionError("round trip failed: " + recovered);
        }
        System.out.println("round trip ok, carrier length " + stego.length());
    }


    // ------------------------------------------------------------------
    // Diagnostics
    // ------------------------------------------------------------------

    /**
     * Renders a human readable report about a carrier text: per class
     * counts of the characters this implementation cares about, the
     * total number of Unicode scalar values and the number of lines.
     * The report is meant for debugging sessions where a stego text is
     * inspected by hand and the invisible characters need to be made
     * visible in some form.
     */
    public static String describe(String text) {
        int scalars = 0;
        int ascii = 0;
        int invisible = 0;
        int whitespace = 0;
        int lines = 1;
        int[] cps = scalars(text);
        for (int cp : cps) {
            scalars++;
            if (cp < 0x80) {
                ascii++;
            }
            if (cp == 0x200B || cp == 0x200C || cp == 0x200D
                    || cp == 0x2060 || cp == 0xFEFF) {
                invisible++;
            }
            if (Character.isWhitespace(cp)) {
                whitespace++;
            }
            if (cp == '\n') {
                lines++;
            }
        }
        StringBuilder sb = new StringBuilder();
        sb.append("scalars=").append(scalars);
        sb.append(" ascii=").append(ascii);
        sb.append(" invisible=").append(invisible);
        sb.append(" whitespace=").append(whitespace);
        sb.append(" lines=").append(lines);
        return sb.toString();
    }

    /**
     * Hex dumps the scalar values of {@code text}, sixteen per row, with
     * printable ASCII shown verbatim in a gutter column. Useful when a
     * round trip fails and the exact carrier positions matter.
     */
    public static String hexDump(String text) {
        int[] cps = scalars(text);
        StringBuilder sb = new StringBuilder();
        StringBuilder gutter = new StringBuilder();
        for (int i = 0; i < cps.length; i++) {
            if (i % 16 == 0 && i > 0) {
                sb.append("  ").append(gutter).append('\n');
                gutter.setLength(0);
            }
            sb.append(String.format("%06X ", cps[i]));
            gutter.append(cps[i] >= 0x20 && cps[i] < 0x7F ? (char) cps[i] : '.');
        }
        if (gutter.length() > 0) {
            int pad = (16 - (cps.length % 16)) % 16;
            for (int p = 0; p < pad; p++) {
                sb.append("       ");
            }
            sb.append("  ").append(gutter).append('\n');
        }
        return sb.toString();
    }

    /**
     * Compares two texts scalar by scalar and reports the index, the
     * expected value and the actual value of the first difference, or -1
     * when the texts are identical. Primarily used by the test driver to
     * point at the exact carrier position where an embedding and a
     * re-embedding diverge.
     */
    public static long firstDifference(String expected, String actual) {
        int[] a = scalars(expected);
        int[] b = scalars(actual);
        int n = Math.min(a.length, b.length);
        for (int i = 0; i < n; i++) {
            if (a[i] != b[i]) {
                return ((long) i << 42) | ((long) a[i] << 21) | b[i];
            }
        }
        if (a.length != b.length) {
            return ((long) n << 42);
        }
        return -1L;
    }

    // ------------------------------------------------------------------
    // Design notes
    // ------------------------------------------------------------------
    //
    // Carrier model. The implementation treats the cover text as a
    // sequence of Unicode scalar values, never as UTF-16 code units or
    // UTF-8 bytes. All indices reported by the diagnostics above are
    // scalar indices. This matters for supplementary plane characters,
    // which occupy two UTF-16 code units in a Java String but count as a
    // single carrier position here.
    //
    // Framing. The payload frame is deliberately minimal: a 16 bit
    // big-endian byte length followed by the raw payload bytes. There is
    // no checksum and no error correction; the carrier is assumed to be
    // either intact or visibly damaged. Schemes that spread the frame
    // across many carrier positions tolerate trailing slack because the
    // length header tells the decoder exactly where the payload ends.
    //
    // Normalization hazards. Any pipeline that runs Unicode
    // normalization (NFC, NFD, NFKC, NFKD) over the stego text is likely
    // to destroy the watermark: compatibility normalization folds most
    // of the whitespace alphabet into the plain ASCII space, strips
    // variation selectors and removes zero width characters. The same
    // applies to "smart" text fields that trim trailing whitespace or
    // collapse repeated spaces. Callers who need the watermark to
    // survive such channels must choose a scheme whose carrier class is
    // preserved by the channel in question.
    //
    // Copy and paste behaviour. Modern browsers and office suites copy
    // zero width characters and exotic spaces faithfully; terminal
    // emulators are less consistent. During manual testing the most
    // reliable way to move a stego text between machines is a file
    // transfer rather than the clipboard.
    //
    // Performance. All loops are linear in the size of the carrier with
    // small constant factors. The implementation favours clarity over
    // speed: the table lookups are linear scans because the tables have
    // at most 64 entries and the cost is negligible next to the string
    // building. Should a caller need to watermark megabytes of text the
    // lookups can be replaced by hash maps without changing behaviour.
    //
    // Thread safety. The class is stateless; all methods are pure
    // functions of their arguments and can be called concurrently.


    // Frequently asked questions.
    //
    // Q: Why is there no encryption of the payload?
    // A: Confidentiality is orthogonal to the carrier question this class
    //    answers. Callers who need a confidential payload should encrypt
    //    it before embedding; the frame carries arbitrary bytes.
    //
    // Q: Why a 16 bit length header rather than a terminator symbol?
    // A: A terminator would reserve one alphabet entry and shrink the
    //    per-position capacity. The explicit length also lets the decoder
    //    ignore slack positions without scanning for a sentinel.
    //
    // Q: What happens when the cover already contains carrier
    //    characters?
    // A: The embedder treats them as writable positions and overwrites
    //    their value. A cover that legitimately uses the carrier class
    //    (for example French text with narrow no-break spaces) therefore
    //    loses that formatting. This trade-off keeps the decoder free of
    //    heuristics about which positions are intentional.

}
