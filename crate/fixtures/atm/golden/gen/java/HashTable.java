/** Collection class named by the platform profile. */
public class HashTable extends java.util.Hashtable<Object, Object> {
}
