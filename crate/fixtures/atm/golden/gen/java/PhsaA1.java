import java.io.*;
import java.util.*;
import javax.swing.*;
import amda.streamio.Console;

public class PhsaA1 extends ClassPHSA {
    private boolean PIN_code_OK;
    private int errors=0;

    public final ConditionScheme conditionScheme = new ConditionScheme();
    public final Memory memory = new Memory();
    public final IOSystem ioSystem = new IOSystem();

    public PhsaA1(String name, Dispatcher dispatcher, ClassPHSA parent) {
        super(name, "A1", dispatcher, parent, "a1_s0");
        states.put("a1_s0", new State("A1_S0", "S0", "initial", ordered()));
        states.put("a1_s1", new State("A1_S1", "S1", "ordinary", ordered(new SendEvent("ev1", null), new SendEvent("ev2", null))));
        states.put("a1_s2", new State("A1_S2", "S2", "ordinary", ordered(new SendEvent("ev4", null), new SendEvent("ev5", null))));
        states.put("a1_s3", new State("A1_S3", "S3", "ordinary", ordered(new CallAction("verifyPINCode"))));
        states.put("a1_s4", new State("A1_S4", "S4", "ordinary", ordered(new SendEvent("ev9", null))));
        states.put("a1_s5", new State("A1_S5", "S5", "ordinary", ordered(new SendEvent("ev10", null))));
        states.put("a1_s6", new State("A1_S6", "S6", "ordinary", ordered(new SendEvent("ev11", null), new SendEvent("ev12", null))));
        states.put("a1_s7", new State("A1_S7", "S7", "ordinary", ordered(new SendEvent("ev14", null))));
        states.put("a1_end", new State("A1_End", "End", "final", ordered()));
        events.put("ev3", new Event("ev3", "Card inserted"));
        events.put("ev7", new Event("ev7", "Operation cancelled on the keyboard"));
        events.put("ev8", new Event("ev8", "All PIN code digits entered"));
        events.put("ev13", new Event("ev13", "Card retained by the card reader"));
        events.put("ev15", new Event("ev15", "Confiscation acknowledged"));
        transitions.put("1", new Transition("a1_s0", null, null, "a1_s1"));
        transitions.put("2", new Transition("a1_s1", "ev3", null, "a1_s2"));
        transitions.put("3", new Transition("a1_s2", "ev7", null, "a1_end"));
        transitions.put("4", new Transition("a1_s2", "ev8", null, "a1_s3"));
        transitions.put("5", new Transition("a1_s3", null, "A1_C_7283c487", "a1_s4"));
        transitions.put("6", new Transition("a1_s3", null, "A1_C_71cac93e", "a1_s6"));
        transitions.put("7", new Transition("a1_s3", null, "A1_C_19222d82", "a1_s5"));
        transitions.put("8", new Transition("a1_s4", null, null, "a1_end"));
        transitions.put("9", new Transition("a1_s5", null, null, "a1_s2"));
        transitions.put("10", new Transition("a1_s6", "ev13", null, "a1_s7"));
        transitions.put("11", new Transition("a1_s7", "ev15", null, "a1_end"));
    }

    public void handler() {
        if (_cstate.equals("a1_s0")) {
            _cstate="a1_s1";
            a1_s1();
        }
        else if (_cstate.equals("a1_s1")) {
            if (_event.equals("ev3")) {
                _cstate="a1_s2";
                a1_s2();
            }
        }
        else if (_cstate.equals("a1_s2")) {
            if (_event.equals("ev7")) {
                _cstate="a1_end";
            }
            else if (_event.equals("ev8")) {
                _cstate="a1_s3";
                a1_s3();
            }
        }
        else if (_cstate.equals("a1_s3")) {
            if (PIN_code_OK==true) {
                _cstate="a1_s4";
                a1_s4();
            }
            else if (errors==3) {
                _cstate="a1_s6";
                a1_s6();
            }
            else if ((PIN_code_OK==false) && (errors<3)) {
                _cstate="a1_s5";
                a1_s5();
            }
        }
        else if (_cstate.equals("a1_s4")) {
            _cstate="a1_end";
        }
        else if (_cstate.equals("a1_s5")) {
            _cstate="a1_s2";
            a1_s2();
        }
        else if (_cstate.equals("a1_s6")) {
            if (_event.equals("ev13")) {
                _cstate="a1_s7";
                a1_s7();
            }
        }
        else if (_cstate.equals("a1_s7")) {
            if (_event.equals("ev15")) {
                _cstate="a1_end";
            }
        }
    }

    protected boolean enabled(String ev) {
        if (_cstate.equals("a1_s1")) {
            return ev.equals("ev3");
        }
        if (_cstate.equals("a1_s2")) {
            return ev.equals("ev7") || ev.equals("ev8");
        }
        if (_cstate.equals("a1_s6")) {
            return ev.equals("ev13");
        }
        if (_cstate.equals("a1_s7")) {
            return ev.equals("ev15");
        }
        return false;
    }

    private void a1_s1() {
        send("ev1");
        send("ev2");
    }

    private void a1_s2() {
        send("ev4");
        send("ev5");
    }

    private void a1_s3() {
        verifyPINCode();
    }

    private void a1_s4() {
        send("ev9");
    }

    private void a1_s5() {
        send("ev10");
    }

    private void a1_s6() {
        send("ev11");
        send("ev12");
    }

    private void a1_s7() {
        send("ev14");
    }

    protected void verifyPINCode() {
        // Supplied by the application.
    }

    public static class ConditionScheme {
        public final HashTable guards = new HashTable();
        public final HashTable funcActions = new HashTable();

        public ConditionScheme() {
            guards.put("A1_C_7283c487", new Guard("A1_C_7283c487", new OclExpression("PIN_code_OK = true")));
            guards.put("A1_C_71cac93e", new Guard("A1_C_71cac93e", new OclExpression("errors = 3")));
            guards.put("A1_C_19222d82", new Guard("A1_C_19222d82", new OclExpression("PIN_code_OK = false and errors < 3")));
            funcActions.put("A1_Func1", new FuncAction("A1_Func1", "verifyPINCode", true));
        }
    }

    public static class Memory {
        public final HashTable variables = new HashTable();

        public Memory() {
            variables.put("errors", new Variable("errors", "int"));
            variables.put("PIN_code_OK", new Variable("PIN_code_OK", "boolean"));
        }
    }

    public static class IOSystem {
        public final HashTable ioActions = new HashTable();

        public IOSystem() {
        }
    }
}
