package amda.streamio;

import java.io.BufferedReader;
import java.io.IOException;
import java.io.InputStreamReader;

/** Console input for stream io actions and the dispatcher loop. */
public final class Console {
    private static final BufferedReader IN = new BufferedReader(new InputStreamReader(System.in));

    private Console() {
    }

    /** Next line of standard input, or null at its end. */
    public static String readLine() {
        try {
            return IN.readLine();
        } catch (IOException e) {
            return null;
        }
    }

    public static String readString() {
        String line = readLine();
        return line == null ? "" : line;
    }

    public static int readInt() {
        return parseInt(readString());
    }

    public static double readDouble() {
        return parseDouble(readString());
    }

    public static boolean readBoolean() {
        return parseBoolean(readString());
    }

    public static char readChar() {
        return parseChar(readString());
    }

    public static String parseString(String s) {
        return s == null ? "" : s;
    }

    public static int parseInt(String s) {
        return Integer.parseInt(parseString(s).trim());
    }

    public static double parseDouble(String s) {
        return Double.parseDouble(parseString(s).trim());
    }

    public static boolean parseBoolean(String s) {
        return Boolean.parseBoolean(parseString(s).trim());
    }

    public static char parseChar(String s) {
        String t = parseString(s);
        return t.length() == 0 ? '\0' : t.charAt(0);
    }
}
