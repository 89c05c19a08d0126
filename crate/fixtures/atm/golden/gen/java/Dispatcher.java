import java.io.*;
import java.util.*;
import javax.swing.*;
import amda.streamio.Console;

/** Creates the application objects and routes events between them. */
public class Dispatcher {
    private final String[] _names = { "controller", "monitor", "card_reader", "keyboard" };
    private final HashTable instances = new HashTable();
    private final HashTable routes = new HashTable();
    private final java.util.LinkedList queue = new java.util.LinkedList();

    public Dispatcher() {
        instances.put("controller", new PhsaA1("controller", this, null));
        instances.put("monitor", new PhsaA2("monitor", this, null));
        instances.put("card_reader", new PhsaA3("card_reader", this, null));
        instances.put("keyboard", new PhsaA4("keyboard", this, null));
        routes.put("controller ev1", "monitor");
        routes.put("controller ev2", "card_reader");
        routes.put("controller ev4", "monitor");
        routes.put("controller ev5", "keyboard");
        routes.put("controller ev9", "monitor");
        routes.put("controller ev10", "monitor");
        routes.put("controller ev11", "monitor");
        routes.put("controller ev12", "card_reader");
        routes.put("controller ev14", "monitor");
    }

    public ClassPHSA instance(String name) {
        return (ClassPHSA) instances.get(name);
    }

    /** Queues ev from sender for its target automaton or routed receiver. */
    public void post(ClassPHSA sender, String ev, String target) {
        ClassPHSA receiver = null;
        if (target != null) {
            receiver = sender.root().find(target);
        }
        else {
            Object name = routes.get(sender.root().name() + " " + ev);
            if (name != null) {
                receiver = instance((String) name);
            }
        }
        if (receiver == null) {
            System.out.println(sender.name() + ": no route for " + ev);
            return;
        }
        queue.add(new Object[] { receiver, ev });
    }

    public void run() {
        while (!queue.isEmpty()) {
            Object[] item = (Object[]) queue.removeFirst();
            ClassPHSA receiver = (ClassPHSA) item[0];
            String ev = (String) item[1];
            if (!receiver.deliver(ev)) {
                System.out.println(receiver.name() + ": dropped " + ev);
            }
        }
    }

    public void start() {
        for (int i = 0; i < _names.length; i++) {
            instance(_names[i]).start();
        }
        run();
    }

    public void inject(String name, String ev) {
        ClassPHSA receiver = instance(name);
        if (receiver == null) {
            System.out.println("unknown instance " + name);
            return;
        }
        queue.add(new Object[] { receiver, ev });
        run();
    }

    /** Reads `instance event` lines from standard input. */
    public static void main(String[] args) {
        Dispatcher dispatcher = new Dispatcher();
        dispatcher.start();
        String line;
        while ((line = amda.streamio.Console.readLine()) != null) {
            line = line.trim();
            if (line.length() == 0 || line.startsWith("#")) {
                continue;
            }
            String[] parts = line.split("\\s+");
            if (parts.length == 2) {
                dispatcher.inject(parts[0], parts[1]);
            }
        }
    }
}
