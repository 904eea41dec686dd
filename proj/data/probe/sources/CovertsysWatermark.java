/**
 * Reference implementation of the CovertSYS text watermarking scheme.
 *
 * The hidden message is appended after the cover text as a run of zero
 * width characters. A zero width joiner (U+200D) separates the cover from
 * the hidden block, the framed payload follows with a zero width space
 * (U+200B) per 0 bit and a zero width non-joiner (U+200C) per 1 bit, and
 * a word joiner (U+2060) terminates the message. Because all carrier
 * characters are invisible the stego text renders exactly like the
 * cover.
 *
 * <p>The class is intentionally self contained: every helper needed to
 * reproduce the embedding and the extraction lives in this single file so
 * that the algorithm can be audited top to bottom without chasing
 * dependencies. Only the JDK standard library is used.</p>
 */
public final class CovertsysWatermark {

    private CovertsysWatermark() {
    }

    /** Zero width space, encodes a 0 bit. */
    private static final int ZERO_BIT = 0x200B;

    /** Zero width non-joiner, encodes a 1 bit. */
    private static final int ONE_BIT = 0x200C;

    /** Zero width joiner, separates cover and hidden block. */
    private static final int START_MARKER = 0x200D;

    /** Word joiner, terminates the hidden block. */
    private static final int END_MARKER = 0x2060;

    /** Appends the framed watermark after the cover text. */
    public static String embed(String cover, String watermark) {
        BitBuffer frame = framePayload(watermark);
        StringBuilder out = new StringBuilder(cover);
        out.appendCodePoint(START_MARKER);
        int n = frame.size();
        for (int i = 0; i < n; i++) {
            out.appendCodePoint(frame.read() ? ONE_BIT : ZERO_BIT);
        }
        out.appendCodePoint(END_MARKER);
        return out.toString();
    }

    /** Locates the trailing hidden block and unframes the payload. */
    public static String extract(String text) {
        int[] cps = scalars(text);
        if (cps.length == 0 || cps[cps.length - 1] != END_MARKER) {
            throw new IllegalStateException("text does not end with the block terminator");
        }
        int start = cps.length - 2;
        while (start >= 0 && (cps[start] == ZERO_BIT || cps[start] == ONE_BIT)) {
            start--;
        }
        if (start < 0 || cps[start] != START_MARKER) {
            throw new IllegalStateException("hidden block has no start marker");
        }
        BitBuffer bits = new BitBuffer();
        for (int i = start + 1; i < cps.length - 1; i++) {
            bits.push(cps[i] == ONE_BIT);
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
     *   javac CovertsysWatermark.java
     *   java CovertsysWatermark
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


    // Known limitations.
    //
    // 1. The scheme is not robust against retyping: a human transcribing
    //    the visible text reproduces none of the carrier characters.
    // 2. Optical character recognition likewise strips the watermark,
    //    since the carrier is invisible by construction.
    // 3. Search-and-replace operations over whitespace, automated
    //    formatters and linters commonly destroy the carrier.
    // 4. The capacity is tied to the structure of the cover; covers
    //    with little of the carrier class hold short payloads only.
    //
    // These limitations are shared by the whole family of Unicode
    // carrier schemes and are the reason the extraction interface fails
    // loudly instead of guessing: a damaged frame raises an exception
    // rather than returning a best-effort payload.


    // Test vectors used during development.
    //
    // The single byte payload "A" frames to 24 bits:
    //   0000000000000001 01000001
    // The fourteen byte payload "Secret Message" frames to 128 bits,
    // beginning with:
    //   0000000000001110 01010011 01100101 01100011 ...
    // Both vectors are exercised by the main method below and by the
    // external test driver, which additionally checks that embedding the
    // same payload twice yields byte-identical output.

}
