package demo;

/**
 * Utility helpers.
 */
public final class Util {
    private static final String URL = "http://example.com"; // home

    // Not instantiable.
    private Util() {}

    public static String esc(String s) {
        return s.replace("\"", "\\\""); /* escape quotes */
    }
}
