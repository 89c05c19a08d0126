using System;
using System.Collections;
using System.Windows.Forms;

public class PhsaA1 : ClassPHSA {
    private bool PIN_code_OK;
    private int errors=0;

    public readonly ConditionScheme conditionScheme = new ConditionScheme();
    public readonly Memory memory = new Memory();
    public readonly IOSystem ioSystem = new IOSystem();

    public PhsaA1(string name, Dispatcher dispatcher, ClassPHSA parent) : base(name, "A1", dispatcher, parent, "a1_s0") {
        states["a1_s0"] = new State("A1_S0", "S0", "initial", ordered());
        states["a1_s1"] = new State("A1_S1", "S1", "ordinary", ordered(new SendEvent("ev1", null), new SendEvent("ev2", null)));
        states["a1_s2"] = new State("A1_S2", "S2", "ordinary", ordered(new SendEvent("ev4", null), new SendEvent("ev5", null)));
        states["a1_s3"] = new State("A1_S3", "S3", "ordinary", ordered(new CallAction("verifyPINCode")));
        states["a1_s4"] = new State("A1_S4", "S4", "ordinary", ordered(new SendEvent("ev9", null)));
        states["a1_s5"] = new State("A1_S5", "S5", "ordinary", ordered(new SendEvent("ev10", null)));
        states["a1_s6"] = new State("A1_S6", "S6", "ordinary", ordered(new SendEvent("ev11", null), new SendEvent("ev12", null)));
        states["a1_s7"] = new State("A1_S7", "S7", "ordinary", ordered(new SendEvent("ev14", null)));
        states["a1_end"] = new State("A1_End", "End", "final", ordered());
        events["ev3"] = new Event("ev3", "Card inserted");
        events["ev7"] = new Event("ev7", "Operation cancelled on the keyboard");
        events["ev8"] = new Event("ev8", "All PIN code digits entered");
        events["ev13"] = new Event("ev13", "Card retained by the card reader");
        events["ev15"] = new Event("ev15", "Confiscation acknowledged");
        transitions["1"] = new Transition("a1_s0", null, null, "a1_s1");
        transitions["2"] = new Transition("a1_s1", "ev3", null, "a1_s2");
        transitions["3"] = new Transition("a1_s2", "ev7", null, "a1_end");
        transitions["4"] = new Transition("a1_s2", "ev8", null, "a1_s3");
        transitions["5"] = new Transition("a1_s3", null, "A1_C_7283c487", "a1_s4");
        transitions["6"] = new Transition("a1_s3", null, "A1_C_71cac93e", "a1_s6");
        transitions["7"] = new Transition("a1_s3", null, "A1_C_19222d82", "a1_s5");
        transitions["8"] = new Transition("a1_s4", null, null, "a1_end");
        transitions["9"] = new Transition("a1_s5", null, null, "a1_s2");
        transitions["10"] = new Transition("a1_s6", "ev13", null, "a1_s7");
        transitions["11"] = new Transition("a1_s7", "ev15", null, "a1_end");
    }

    public override void handler() {
        if (_cstate.Equals("a1_s0")) {
            _cstate="a1_s1";
            a1_s1();
        }
        else if (_cstate.Equals("a1_s1")) {
            if (_event.Equals("ev3")) {
                _cstate="a1_s2";
                a1_s2();
            }
        }
        else if (_cstate.Equals("a1_s2")) {
            if (_event.Equals("ev7")) {
                _cstate="a1_end";
            }
            else if (_event.Equals("ev8")) {
                _cstate="a1_s3";
                a1_s3();
            }
        }
        else if (_cstate.Equals("a1_s3")) {
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
        else if (_cstate.Equals("a1_s4")) {
            _cstate="a1_end";
        }
        else if (_cstate.Equals("a1_s5")) {
            _cstate="a1_s2";
            a1_s2();
        }
        else if (_cstate.Equals("a1_s6")) {
            if (_event.Equals("ev13")) {
                _cstate="a1_s7";
                a1_s7();
            }
        }
        else if (_cstate.Equals("a1_s7")) {
            if (_event.Equals("ev15")) {
                _cstate="a1_end";
            }
        }
    }

    protected override bool enabled(string ev) {
        if (_cstate.Equals("a1_s1")) {
            return ev.Equals("ev3");
        }
        if (_cstate.Equals("a1_s2")) {
            return ev.Equals("ev7") || ev.Equals("ev8");
        }
        if (_cstate.Equals("a1_s6")) {
            return ev.Equals("ev13");
        }
        if (_cstate.Equals("a1_s7")) {
            return ev.Equals("ev15");
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

    protected virtual void verifyPINCode() {
        // Supplied by the application.
    }

    public class ConditionScheme {
        public readonly Hashtable guards = new Hashtable();
        public readonly Hashtable funcActions = new Hashtable();

        public ConditionScheme() {
            guards["A1_C_7283c487"] = new Guard("A1_C_7283c487", new OclExpression("PIN_code_OK = true"));
            guards["A1_C_71cac93e"] = new Guard("A1_C_71cac93e", new OclExpression("errors = 3"));
            guards["A1_C_19222d82"] = new Guard("A1_C_19222d82", new OclExpression("PIN_code_OK = false and errors < 3"));
            funcActions["A1_Func1"] = new FuncAction("A1_Func1", "verifyPINCode", true);
        }
    }

    public class Memory {
        public readonly Hashtable variables = new Hashtable();

        public Memory() {
            variables["errors"] = new Variable("errors", "int");
            variables["PIN_code_OK"] = new Variable("PIN_code_OK", "bool");
        }
    }

    public class IOSystem {
        public readonly Hashtable ioActions = new Hashtable();

        public IOSystem() {
        }
    }
}
