import java.io.*;
import java.util.*;
import javax.swing.*;
import amda.streamio.Console;

public class PhsaA4 extends ClassPHSA {
    public final ConditionScheme conditionScheme = new ConditionScheme();
    public final Memory memory = new Memory();
    public final IOSystem ioSystem = new IOSystem();

    public PhsaA4(String name, Dispatcher dispatcher, ClassPHSA parent) {
        super(name, "A4", dispatcher, parent, "a4_s0");
        states.put("a4_s0", new State("A4_S0", "S0", "initial", ordered()));
        states.put("a4_idle", new State("A4_Idle", "Idle", "ordinary", ordered()));
        states.put("a4_end", new State("A4_End", "End", "final", ordered()));
        events.put("ev5", new Event("ev5", "Start reading the PIN code"));
        events.put("shutdown", new Event("shutdown", "Power off"));
        transitions.put("1", new Transition("a4_s0", null, null, "a4_idle"));
        transitions.put("2", new Transition("a4_idle", "ev5", null, "a4_idle"));
        transitions.put("3", new Transition("a4_idle", "shutdown", null, "a4_end"));
    }

    public void handler() {
        if (_cstate.equals("a4_s0")) {
            _cstate="a4_idle";
        }
        else if (_cstate.equals("a4_idle")) {
            if (_event.equals("ev5")) {
                _cstate="a4_idle";
            }
            else if (_event.equals("shutdown")) {
                _cstate="a4_end";
            }
        }
    }

    protected boolean enabled(String ev) {
        if (_cstate.equals("a4_idle")) {
            return ev.equals("ev5") || ev.equals("shutdown");
        }
        return false;
    }

    public static class ConditionScheme {
        public final HashTable guards = new HashTable();
        public final HashTable funcActions = new HashTable();

        public ConditionScheme() {
        }
    }

    public static class Memory {
        public final HashTable variables = new HashTable();

        public Memory() {
        }
    }

    public static class IOSystem {
        public final HashTable ioActions = new HashTable();

        public IOSystem() {
        }
    }
}
